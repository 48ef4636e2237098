#pragma once

#include <stdexcept>
#include <string>

namespace tiltchar {

/// Malformed input: bad Cartan matrix, unknown root type, bad word, l < h.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request outside the precomputed length bound of a table.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace tiltchar

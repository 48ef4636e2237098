// Finite root data given by a Cartan matrix.
//
// Convention: cartan[i][j] = <alpha_i^vee, alpha_j>. Weights are written in
// fundamental-weight coordinates, so <lambda, alpha_i^vee> is simply the i-th
// coordinate and the simple root alpha_j has coordinates cartan[.][j].
// Roots are stored in the simple-root basis, coroots in the simple-coroot
// basis.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tiltchar/errors.hpp"

namespace tiltchar {

using IntMatrix = std::vector<std::vector<long long>>;
using IntVector = std::vector<long long>;

namespace detail {

// Exact determinant by fraction-free Gaussian elimination (Bareiss).
inline long long bareiss_determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  long long sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace detail

class RootDatum {
 public:
  /// Validates the matrix and builds the positive (co)roots. Throws
  /// ConfigError naming the first violated condition.
  static RootDatum from_cartan(std::string label, IntMatrix cartan) {
    RootDatum d;
    d.label_ = std::move(label);
    d.cartan_ = std::move(cartan);
    d.validate();
    d.build_roots();
    return d;
  }

  static RootDatum builtin(std::string_view name) {
    if (name == "A1") return from_cartan("A1", {{2}});
    if (name == "A2") return from_cartan("A2", {{2, -1}, {-1, 2}});
    if (name == "A3") return from_cartan("A3", {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
    if (name == "B2") return from_cartan("B2", {{2, -1}, {-2, 2}});
    if (name == "G2") return from_cartan("G2", {{2, -3}, {-1, 2}});
    throw ConfigError("unknown root system type '" + std::string(name) +
                      "' (built-in: A1, A2, A3, B2, G2)");
  }

  /// Plain-text Cartan matrix: one row per line, integers separated by
  /// whitespace. Blank lines and lines starting with '#' are ignored.
  static RootDatum parse_cartan_text(std::string_view text, std::string label = "custom") {
    IntMatrix rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      std::istringstream ls(line);
      IntVector row;
      std::string tok;
      while (ls >> tok) {
        char* end = nullptr;
        long long val = std::strtoll(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0')
          throw ConfigError("cartan matrix: non-integer entry '" + tok + "'");
        row.push_back(val);
      }
      rows.push_back(std::move(row));
    }
    return from_cartan(std::move(label), std::move(rows));
  }

  const std::string& label() const { return label_; }
  int rank() const { return static_cast<int>(cartan_.size()); }
  /// Number of affine Coxeter generators: 0 is affine, 1..rank are finite.
  int num_generators() const { return rank() + 1; }
  const IntMatrix& cartan() const { return cartan_; }

  /// Positive roots in the simple-root basis; index-aligned with coroots.
  const std::vector<IntVector>& positive_roots() const { return roots_; }
  /// Positive coroots in the simple-coroot basis.
  const std::vector<IntVector>& positive_coroots() const { return coroots_; }

  /// rho in fundamental-weight coordinates (all ones).
  IntVector rho() const { return IntVector(cartan_.size(), 1); }

  int coxeter_number() const {
    return static_cast<int>(2 * roots_.size() / cartan_.size());
  }

  /// Index of the root whose coroot is the highest coroot (the highest
  /// short root). The affine wall of the fundamental alcove is
  /// <p, coroot> = 1 for this root.
  std::size_t affine_root_index() const { return affine_root_; }

  /// A root (simple-root basis) expressed in fundamental-weight coordinates.
  IntVector root_in_weights(const IntVector& root) const {
    IntVector w(cartan_.size(), 0);
    for (std::size_t i = 0; i < cartan_.size(); ++i)
      for (std::size_t j = 0; j < cartan_.size(); ++j) w[i] += cartan_[i][j] * root[j];
    return w;
  }

  /// <p, coroot> for p in fundamental-weight coordinates.
  static long long pair(const IntVector& p, const IntVector& coroot) {
    return std::inner_product(p.begin(), p.end(), coroot.begin(), 0LL);
  }

  friend bool operator==(const RootDatum& a, const RootDatum& b) {
    return a.cartan_ == b.cartan_;
  }

 private:
  RootDatum() = default;

  void validate() const {
    const std::size_t n = cartan_.size();
    if (n == 0) throw ConfigError("cartan matrix: empty");
    if (n > 9) throw ConfigError("cartan matrix: rank above 9 is not supported");
    for (const auto& row : cartan_)
      if (row.size() != n) throw ConfigError("cartan matrix: not square");
    for (std::size_t i = 0; i < n; ++i) {
      if (cartan_[i][i] != 2) throw ConfigError("cartan matrix: diagonal entry is not 2");
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (cartan_[i][j] > 0) throw ConfigError("cartan matrix: positive off-diagonal entry");
        if ((cartan_[i][j] == 0) != (cartan_[j][i] == 0))
          throw ConfigError("cartan matrix: a_ij = 0 but a_ji != 0");
      }
    }
    // Finite type: every principal minor positive.
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      IntMatrix sub(idx.size(), IntVector(idx.size()));
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) sub[a][b] = cartan_[idx[a]][idx[b]];
      if (detail::bareiss_determinant(sub) <= 0)
        throw ConfigError("cartan matrix: not of finite type (a principal minor is not positive)");
    }
    // A single affine generator requires an irreducible root system.
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j)
        if (!seen[j] && cartan_[i][j] != 0) {
          seen[j] = true;
          stack.push_back(j);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw ConfigError("cartan matrix: Dynkin diagram is not connected");
  }

  // Orbit of the simple (root, coroot) pairs under the simple reflections,
  // keeping the positive ones. s_i(a) = a - <a, a_i^vee> a_i and
  // s_i(b^vee) = b^vee - <a_i, b^vee> a_i^vee.
  void build_roots() {
    const std::size_t n = cartan_.size();
    std::map<IntVector, IntVector> found;
    std::vector<std::pair<IntVector, IntVector>> queue;
    for (std::size_t j = 0; j < n; ++j) {
      IntVector e(n, 0);
      e[j] = 1;
      found.emplace(e, e);
      queue.emplace_back(e, e);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto [root, coroot] = queue[head];
      for (std::size_t i = 0; i < n; ++i) {
        long long a = 0, b = 0;
        for (std::size_t j = 0; j < n; ++j) {
          a += cartan_[i][j] * root[j];
          b += cartan_[j][i] * coroot[j];
        }
        IntVector r2 = root, c2 = coroot;
        r2[i] -= a;
        c2[i] -= b;
        if (std::any_of(r2.begin(), r2.end(), [](long long x) { return x < 0; })) continue;
        if (std::all_of(r2.begin(), r2.end(), [](long long x) { return x == 0; })) continue;
        if (found.emplace(r2, c2).second) queue.emplace_back(r2, c2);
        if (queue.size() > 10000) throw ConfigError("cartan matrix: root system is not finite");
      }
    }
    // Order by height, then lexicographically, for reproducible indexing.
    std::vector<std::pair<IntVector, IntVector>> all(found.begin(), found.end());
    auto height = [](const IntVector& v) { return std::accumulate(v.begin(), v.end(), 0LL); };
    std::stable_sort(all.begin(), all.end(), [&](const auto& x, const auto& y) {
      return height(x.first) < height(y.first);
    });
    roots_.clear();
    coroots_.clear();
    long long best = -1;
    for (std::size_t k = 0; k < all.size(); ++k) {
      roots_.push_back(all[k].first);
      coroots_.push_back(all[k].second);
      if (height(all[k].second) > best) {
        best = height(all[k].second);
        affine_root_ = k;
      }
    }
  }

  std::string label_;
  IntMatrix cartan_;
  std::vector<IntVector> roots_;
  std::vector<IntVector> coroots_;
  std::size_t affine_root_ = 0;
};

}  // namespace tiltchar

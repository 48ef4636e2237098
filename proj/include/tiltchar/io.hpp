// JSON forms of polynomials, module vectors and diagrams, and the optional
// on-disk cache of canonical bases.
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tiltchar/balance.hpp"
#include "tiltchar/kl.hpp"

namespace tiltchar {

using json = nlohmann::ordered_json;

/// Coefficients that fit in 64 bits are JSON numbers; larger ones are
/// decimal strings.
inline json integer_to_json(const Integer& c) {
  if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(c);
  return c.str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw ConfigError("expected an integer, got " + j.dump());
}

/// [[exponent, coefficient], ...] sorted by exponent; v + 2v^3 is [[1,1],[3,2]].
inline json poly_to_json(const LaurentPoly& p) {
  json arr = json::array();
  for (const auto& [e, c] : p.terms()) arr.push_back(json::array({e, integer_to_json(c)}));
  return arr;
}

inline LaurentPoly poly_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("polynomial must be an array of [exponent, coefficient]");
  LaurentPoly p;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer())
      throw ConfigError("bad polynomial term " + term.dump());
    p.add_term(term[0].get<int>(), integer_from_json(term[1]));
  }
  return p;
}

/// {word: polynomial}; the identity is the empty word.
inline json vector_to_json(const ModuleVector& m) {
  json obj = json::object();
  for (const auto& [x, p] : m.entries()) obj[x.word()] = poly_to_json(p);
  return obj;
}

inline ModuleVector vector_from_json(const AffineWeylGroup& g, Parity parity, const json& j) {
  ModuleVector m(parity);
  for (const auto& [word, poly] : j.items()) m.add(g.parse_word(word), poly_from_json(poly));
  return m;
}

/// [{offset, factors: [{word, mult}]}], offsets ascending. `name` renders a
/// label.
template <class Label, class Order>
json diagram_to_json(const LoewyDiagram<Label, Order>& d,
                     const std::function<std::string(const Label&)>& name) {
  json layers = json::array();
  for (const auto& [off, layer] : d.layers()) {
    json factors = json::array();
    for (const auto& [label, m] : layer)
      factors.push_back({{"word", name(label)}, {"mult", integer_to_json(m)}});
    layers.push_back({{"offset", off}, {"factors", factors}});
  }
  return layers;
}

inline json multiplicities_to_json(const Multiplicities& m) {
  json arr = json::array();
  for (const auto& [x, c] : m) arr.push_back({{"word", x.word()}, {"mult", integer_to_json(c)}});
  return arr;
}

// ---------------------------------------------------------------------------
// Blocks files for the balancing procedure:
//   {"blocks": {"9": [["9"], ["7","6","3","1"], ["2","5"]], ...},
//    "order": ["9","7",...,"1"],      highest label first
//    "top": "9"}

/// Total order on string labels given by an explicit ranking.
struct RankedOrder {
  std::shared_ptr<const std::map<std::string, int>> rank;
  bool operator()(const std::string& a, const std::string& b) const {
    return rank->at(a) < rank->at(b);
  }
};

struct BlocksInput {
  BlockMap<std::string, RankedOrder> blocks;
  RankedOrder order;
  std::string top;
};

inline std::string label_from_json(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ConfigError("block label must be a string or integer, got " + j.dump());
}

inline BlocksInput blocks_from_json(const json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j.contains("order") || !j.contains("top"))
    throw ConfigError("blocks file needs keys 'blocks', 'order' and 'top'");
  auto rank = std::make_shared<std::map<std::string, int>>();
  const auto& order = j.at("order");
  if (!order.is_array()) throw ConfigError("'order' must be an array");
  for (std::size_t i = 0; i < order.size(); ++i) {
    // Highest first in the file; internally a larger rank is higher.
    if (!rank->emplace(label_from_json(order[i]), static_cast<int>(order.size() - i)).second)
      throw ConfigError("label listed twice in 'order'");
  }
  RankedOrder cmp{rank};
  auto known = [&](const std::string& l) {
    if (!rank->count(l)) throw ConfigError("label '" + l + "' missing from 'order'");
    return l;
  };
  BlocksInput in{BlockMap<std::string, RankedOrder>(cmp), cmp, known(label_from_json(j.at("top")))};
  for (const auto& [key, layers] : j.at("blocks").items()) {
    ParityBlock<std::string> block{known(key), {}};
    if (!layers.is_array()) throw ConfigError("block '" + key + "' must be an array of layers");
    for (const auto& layer : layers) {
      if (!layer.is_array()) throw ConfigError("block '" + key + "': a layer must be an array");
      std::vector<std::string> labels;
      for (const auto& l : layer) labels.push_back(known(label_from_json(l)));
      block.layers.push_back(std::move(labels));
    }
    if (block.layers.empty() || block.layers[0] != std::vector<std::string>{key})
      throw ConfigError("block '" + key + "': depth 0 must be exactly [\"" + key + "\"]");
    in.blocks.emplace(key, std::move(block));
  }
  return in;
}

// ---------------------------------------------------------------------------
// Canonical-basis cache. One file per (Cartan matrix, parity):
//   {"cartan": [[...]], "parity": "asph", "max_len": L,
//    "basis": {"<x>": {"<y>": poly, ...}, ...}}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, const RootDatum& d,
                                        Parity parity) {
  std::string key;
  for (const auto& row : d.cartan())
    for (auto c : row) key += std::to_string(c) + ",";
  const auto hash = std::hash<std::string>{}(key);
  std::ostringstream name;
  name << "kl-" << d.label() << "-r" << d.rank() << "-" << std::hex << hash << "-"
       << to_string(parity) << ".json";
  return dir / name.str();
}

/// Seeds `table` from a cache file. Returns the number of basis elements
/// loaded; a missing or mismatched file loads nothing.
inline std::size_t load_cache(KLTable& table, const std::filesystem::path& dir) {
  const auto path = cache_file(dir, table.group().datum(), table.parity());
  std::ifstream in(path);
  if (!in) return 0;
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error&) {
    return 0;
  }
  if (!j.is_object() || !j.contains("basis") || j.value("parity", "") != to_string(table.parity()) ||
      j.value("cartan", json()) != json(table.group().datum().cartan()))
    return 0;
  // All-or-nothing: every entry must parse and be self-dual with the
  // canonical leading term before any of them is used.
  std::vector<std::pair<AlcoveElement, ModuleVector>> entries;
  try {
    for (const auto& [word, vec] : j.at("basis").items()) {
      auto x = table.group().parse_word(word);
      auto b = vector_from_json(table.group(), table.parity(), vec);
      if (x.length() > table.max_len()) continue;
      if (b.coefficient(x) != LaurentPoly(1) || table.module().dualize(b) != b) return 0;
      for (const auto& [y, p] : b.entries())
        if (!(y == x) && (y.length() >= x.length() || *p.min_degree() < 1)) return 0;
      entries.emplace_back(std::move(x), std::move(b));
    }
    for (auto& [x, b] : entries) table.seed_basis(x, std::move(b));
  } catch (const std::exception&) {
    return 0;
  }
  return entries.size();
}

/// Writes every canonical basis element up to the table's bound.
inline void save_cache(const KLTable& table, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json basis = json::object();
  for (const auto& x : table.elements()) basis[x.word()] = vector_to_json(table.kl_basis(x));
  json j = {{"cartan", table.group().datum().cartan()},
            {"parity", to_string(table.parity())},
            {"max_len", table.max_len()},
            {"basis", basis}};
  const auto path = cache_file(dir, table.group().datum(), table.parity());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tiltchar

// Layered multisets: multiplicity of each label in each Loewy layer, with
// offset 0 the middle layer and offsets increasing toward the socle.
#pragma once

#include <functional>
#include <map>
#include <vector>

#include "tiltchar/laurent.hpp"

namespace tiltchar {

template <class Label, class Order = std::less<Label>>
class LoewyDiagram {
 public:
  using Layer = std::map<Label, Integer, Order>;

  explicit LoewyDiagram(Order order = Order{}) : order_(order) {}

  void add(const Label& label, int offset, const Integer& mult = 1) {
    if (mult == 0) return;
    auto& layer = layers_.try_emplace(offset, Layer(order_)).first->second;
    auto& m = layer[label];
    m += mult;
    if (m == 0) layer.erase(label);
    if (layer.empty()) layers_.erase(offset);
  }

  Integer entry(const Label& label, int offset) const {
    auto it = layers_.find(offset);
    if (it == layers_.end()) return 0;
    auto jt = it->second.find(label);
    return jt == it->second.end() ? Integer(0) : jt->second;
  }

  /// Layers with at least one factor, keyed by offset.
  const std::map<int, Layer>& layers() const { return layers_; }

  Layer layer(int offset) const {
    auto it = layers_.find(offset);
    return it == layers_.end() ? Layer(order_) : it->second;
  }

  bool empty() const { return layers_.empty(); }

  /// entry(B, i) == entry(B, -i) for every label and offset.
  bool is_balanced() const {
    for (const auto& [off, layer] : layers_)
      for (const auto& [label, m] : layer)
        if (entry(label, -off) != m) return false;
    return true;
  }

  /// Total multiplicity per layer, from the most negative offset down.
  std::vector<Integer> layer_sizes() const {
    std::vector<Integer> out;
    if (layers_.empty()) return out;
    for (int off = layers_.begin()->first; off <= layers_.rbegin()->first; ++off) {
      Integer total = 0;
      for (const auto& [label, m] : layer(off)) total += m;
      out.push_back(total);
    }
    return out;
  }

  Integer total() const {
    Integer t = 0;
    for (const auto& [off, layer] : layers_)
      for (const auto& [label, m] : layer) t += m;
    return t;
  }

  friend bool operator==(const LoewyDiagram& a, const LoewyDiagram& b) {
    return a.layers_ == b.layers_;
  }

 private:
  Order order_;
  std::map<int, Layer> layers_;
};

}  // namespace tiltchar

// The affine Weyl group acting on alcoves and its set W+ of elements that
// carry the fundamental alcove into the dominant chamber.
//
// Geometry is fixed at lattice scale 1: reflecting hyperplanes are
// <p, a^vee> = m for positive coroots a^vee and integers m, and the base point
// of the fundamental alcove is rho/h. All points are stored multiplied by h,
// which makes every coordinate an integer. Generator 0 is the reflection in
// the wall <p, theta^vee> = 1 (theta^vee the highest coroot); generators
// 1..n are the simple reflections in Cartan-matrix row order.
#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tiltchar/errors.hpp"
#include "tiltchar/root_datum.hpp"

namespace tiltchar {

/// p -> linear * p + h * shift, on h-scaled fundamental-weight coordinates.
struct AffineMap {
  IntMatrix linear;
  IntVector shift;

  IntVector apply(const IntVector& p, long long h) const {
    IntVector r(shift.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      long long acc = h * shift[i];
      for (std::size_t j = 0; j < p.size(); ++j) acc += linear[i][j] * p[j];
      r[i] = acc;
    }
    return r;
  }

  /// (*this) o other
  AffineMap compose(const AffineMap& other) const {
    const std::size_t n = shift.size();
    AffineMap r{IntMatrix(n, IntVector(n, 0)), shift};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) r.linear[i][j] += linear[i][k] * other.linear[k][j];
        r.shift[i] += linear[i][j] * other.shift[j];
      }
    return r;
  }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

class AffineWeylGroup;

/// An element of W+, identified with the dominant alcove x.C. Always held in
/// canonical form: `word` is the ShortLex-minimal reduced word.
class AlcoveElement {
 public:
  const std::string& word() const { return word_; }
  /// h-scaled interior point of the alcove.
  const IntVector& point() const { return point_; }
  int length() const { return length_; }
  const AffineMap& map() const { return map_; }

  /// Display name: the word, or "e" for the identity.
  std::string label() const { return word_.empty() ? std::string("e") : word_; }

  friend bool operator==(const AlcoveElement& a, const AlcoveElement& b) {
    return a.point_ == b.point_;
  }
  /// (length, ShortLex word); agrees with == on canonical elements.
  friend std::strong_ordering operator<=>(const AlcoveElement& a, const AlcoveElement& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    if (a.word_ < b.word_) return std::strong_ordering::less;
    if (b.word_ < a.word_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  friend class AffineWeylGroup;
  std::string word_;
  IntVector point_;
  int length_ = 0;
  AffineMap map_;
};

enum class Step { UpIn, DownIn, Out };

struct MultResult {
  Step step;
  std::optional<AlcoveElement> element;  // empty iff step == Out
};

class AffineWeylGroup {
 public:
  explicit AffineWeylGroup(RootDatum datum) : datum_(std::move(datum)) {
    const int n = datum_.rank();
    h_ = datum_.coxeter_number();
    base_ = datum_.rho();  // h * (rho / h)
    const auto& theta = datum_.positive_roots()[datum_.affine_root_index()];
    const auto& theta_co = datum_.positive_coroots()[datum_.affine_root_index()];
    const IntVector theta_w = datum_.root_in_weights(theta);
    // s_0(p) = p - (<p, theta^vee> - 1) theta
    AffineMap s0{IntMatrix(n, IntVector(n, 0)), theta_w};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s0.linear[i][j] = (i == j ? 1 : 0) - theta_w[i] * theta_co[j];
    generators_.push_back(std::move(s0));
    // s_k(p) = p - <p, a_k^vee> a_k
    for (int k = 0; k < n; ++k) {
      AffineMap sk{IntMatrix(n, IntVector(n, 0)), IntVector(n, 0)};
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          sk.linear[i][j] = (i == j ? 1 : 0) - (j == k ? datum_.cartan()[i][k] : 0);
      generators_.push_back(std::move(sk));
    }
    AffineMap id{IntMatrix(n, IntVector(n, 0)), IntVector(n, 0)};
    for (int i = 0; i < n; ++i) id.linear[i][i] = 1;
    identity_ = make_element(std::move(id), "");
    words_.emplace(identity_.point_, "");
  }

  // Elements hold no pointer back to the group; copying the registry is fine
  // but the mutex is not copyable.
  AffineWeylGroup(const AffineWeylGroup& o)
      : datum_(o.datum_), h_(o.h_), base_(o.base_), generators_(o.generators_),
        identity_(o.identity_) {
    std::lock_guard lock(o.mutex_);
    words_ = o.words_;
    layers_ = o.layers_;
  }

  const RootDatum& datum() const { return datum_; }
  int num_generators() const { return datum_.num_generators(); }
  int coxeter_number() const { return static_cast<int>(h_); }

  AlcoveElement identity() const { return identity_; }

  /// Classifies x*s: inside W+ and longer, inside W+ and shorter, or leaving
  /// W+ (which only happens through a wall of the dominant chamber).
  MultResult right_mult(const AlcoveElement& x, int s) const {
    check_generator(s);
    AffineMap m = x.map_.compose(generators_[s]);
    IntVector p = m.apply(base_, h_);
    if (!is_dominant(p)) return {Step::Out, std::nullopt};
    const int len = separating_hyperplanes(p);
    AlcoveElement y = element_from_map(std::move(m));
    return {len > x.length_ ? Step::UpIn : Step::DownIn, std::move(y)};
  }

  /// Number of reflecting hyperplanes strictly between the h-scaled point p
  /// and the base point.
  int separating_hyperplanes(const IntVector& p) const {
    long long count = 0;
    for (const auto& co : datum_.positive_coroots()) {
      long long val = RootDatum::pair(p, co);
      long long q = val / h_;
      if (val % h_ != 0 && val < 0) --q;  // floor
      count += q < 0 ? -q : q;
    }
    return static_cast<int>(count);
  }

  /// Strictly inside the dominant chamber.
  bool is_dominant(const IntVector& p) const {
    return std::all_of(p.begin(), p.end(), [](long long c) { return c > 0; });
  }

  /// All x in W+ with length <= max_len, ordered by (length, ShortLex).
  std::vector<AlcoveElement> enumerate_wplus(int max_len) const {
    if (max_len < 0) throw RangeError("enumerate_wplus: negative length bound");
    std::lock_guard lock(mutex_);
    if (layers_.empty()) layers_.push_back({identity_});
    while (static_cast<int>(layers_.size()) <= max_len) {
      std::map<IntVector, std::pair<std::string, AffineMap>> next;
      const auto& cur = layers_.back();
      const int len = static_cast<int>(layers_.size());
      for (const auto& x : cur) {
        for (int s = 0; s < num_generators(); ++s) {
          AffineMap m = x.map_.compose(generators_[s]);
          IntVector p = m.apply(base_, h_);
          if (!is_dominant(p) || separating_hyperplanes(p) != len) continue;
          std::string w = x.word_ + static_cast<char>('0' + s);
          auto it = next.find(p);
          if (it == next.end())
            next.emplace(std::move(p), std::make_pair(std::move(w), std::move(m)));
          else if (w < it->second.first)
            it->second.first = std::move(w);
        }
      }
      std::vector<AlcoveElement> layer;
      for (auto& [p, wm] : next) {
        words_.emplace(p, wm.first);
        layer.push_back(make_element(std::move(wm.second), std::move(wm.first)));
      }
      std::sort(layer.begin(), layer.end());
      layers_.push_back(std::move(layer));
    }
    std::vector<AlcoveElement> out;
    for (int k = 0; k <= max_len; ++k) out.insert(out.end(), layers_[k].begin(), layers_[k].end());
    return out;
  }

  /// Parses a generator-index string ("010"; "" or "e" for the identity).
  /// The word must be reduced with every prefix in W+. Returns the element in
  /// canonical form, whose word may differ from the input.
  AlcoveElement parse_word(std::string_view word) const {
    if (word == "e") word = "";
    AlcoveElement x = identity_;
    for (char c : word) {
      int s = c - '0';
      if (c < '0' || s >= num_generators())
        throw ConfigError("alcove word: invalid generator '" + std::string(1, c) + "'");
      auto r = right_mult(x, s);
      if (r.step != Step::UpIn)
        throw ConfigError("alcove word '" + std::string(word) +
                          "' is not a reduced word of a dominant alcove");
      x = std::move(*r.element);
    }
    return x;
  }

  /// Every reduced word of x (all of them stay inside W+ prefix by prefix).
  std::vector<std::string> reduced_words(const AlcoveElement& x) const {
    if (x.length_ == 0) return {""};
    std::vector<std::string> out;
    for (int s = 0; s < num_generators(); ++s) {
      auto r = right_mult(x, s);
      if (r.step != Step::DownIn) continue;
      for (auto& w : reduced_words(*r.element)) out.push_back(w + static_cast<char>('0' + s));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The weight x .(l) 0 = x_l(rho) - rho in fundamental-weight coordinates,
  /// where x_l is x with translations scaled by l.
  IntVector weight_of(const AlcoveElement& x, long long l) const {
    if (l < h_) throw ConfigError("no regular base weight at this l (need l >= " +
                                  std::to_string(h_) + ")");
    const IntVector rho = datum_.rho();
    IntVector lam = x.map_.apply(rho, l);
    for (std::size_t i = 0; i < lam.size(); ++i) lam[i] -= rho[i];
    return lam;
  }

 private:
  void check_generator(int s) const {
    if (s < 0 || s >= num_generators())
      throw ConfigError("invalid generator index " + std::to_string(s));
  }

  AlcoveElement make_element(AffineMap m, std::string word) const {
    AlcoveElement e;
    e.point_ = m.apply(base_, h_);
    e.length_ = separating_hyperplanes(e.point_);
    e.map_ = std::move(m);
    e.word_ = std::move(word);
    return e;
  }

  AlcoveElement element_from_map(AffineMap m) const {
    IntVector p = m.apply(base_, h_);
    std::string w = canonical_word(p, m);
    return make_element(std::move(m), std::move(w));
  }

  // ShortLex-minimal reduced word: the minimum of canonical(x s) + s over
  // the right descents s of x.
  std::string canonical_word(const IntVector& p, const AffineMap& m) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = words_.find(p); it != words_.end()) return it->second;
    }
    const int len = separating_hyperplanes(p);
    std::optional<std::string> best;
    for (int s = 0; s < num_generators(); ++s) {
      AffineMap ms = m.compose(generators_[s]);
      IntVector ps = ms.apply(base_, h_);
      if (separating_hyperplanes(ps) >= len) continue;
      std::string w = canonical_word(ps, ms) + static_cast<char>('0' + s);
      if (!best || w < *best) best = std::move(w);
    }
    std::lock_guard lock(mutex_);
    return words_.emplace(p, *best).first->second;
  }

  RootDatum datum_;
  long long h_;
  IntVector base_;
  std::vector<AffineMap> generators_;
  AlcoveElement identity_;
  mutable std::mutex mutex_;
  mutable std::map<IntVector, std::string> words_;
  mutable std::vector<std::vector<AlcoveElement>> layers_;
};

}  // namespace tiltchar

// Finitely supported vectors in the spherical module M and the
// antispherical module N of the affine Hecke algebra, with the right action
// of the generators and the bar involution.
//
// Both modules have the standard basis {X_x : x in W+}. Right multiplication
// by the Kazhdan-Lusztig generator Hs_ = H_s + v acts by
//   X_x Hs_ = X_{xs} + v X_x        if xs in W+, xs > x
//           = X_{xs} + v^-1 X_x     if xs in W+, xs < x
//           = (v + v^-1) X_x or 0   if xs not in W+ (spherical / antispherical)
#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "tiltchar/affine_weyl.hpp"
#include "tiltchar/laurent.hpp"

namespace tiltchar {

enum class Parity { Spherical, Antispherical };

inline std::string to_string(Parity p) {
  return p == Parity::Spherical ? "sph" : "asph";
}

inline Parity opposite(Parity p) {
  return p == Parity::Spherical ? Parity::Antispherical : Parity::Spherical;
}

class ModuleVector {
 public:
  using Entries = std::map<AlcoveElement, LaurentPoly>;

  explicit ModuleVector(Parity parity) : parity_(parity) {}

  static ModuleVector basis_vector(Parity parity, const AlcoveElement& x) {
    ModuleVector m(parity);
    m.add(x, LaurentPoly(1));
    return m;
  }

  Parity parity() const { return parity_; }
  const Entries& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  LaurentPoly coefficient(const AlcoveElement& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? LaurentPoly() : it->second;
  }

  void add(const AlcoveElement& x, const LaurentPoly& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace(x, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  /// this += scale * other
  void add_scaled(const ModuleVector& other, const LaurentPoly& scale) {
    if (scale.is_zero()) return;
    for (const auto& [x, p] : other.entries_) add(x, p * scale);
  }

  ModuleVector& operator+=(const ModuleVector& o) {
    add_scaled(o, LaurentPoly(1));
    return *this;
  }
  ModuleVector& operator-=(const ModuleVector& o) {
    add_scaled(o, LaurentPoly(-1));
    return *this;
  }
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  friend ModuleVector operator*(const LaurentPoly& s, const ModuleVector& m) {
    ModuleVector r(m.parity_);
    r.add_scaled(m, s);
    return r;
  }

  /// Longest support element (by length, then ShortLex).
  const AlcoveElement& leading() const { return entries_.rbegin()->first; }

  friend bool operator==(const ModuleVector&, const ModuleVector&) = default;

 private:
  Parity parity_;
  Entries entries_;
};

/// Right action of the generators on M or N, plus dualization. Holds a memo
/// of the duals of standard basis vectors.
class HeckeModule {
 public:
  HeckeModule(const AffineWeylGroup& group, Parity parity) : group_(&group), parity_(parity) {}
  HeckeModule(const HeckeModule& o) : group_(o.group_), parity_(o.parity_) {}

  const AffineWeylGroup& group() const { return *group_; }
  Parity parity() const { return parity_; }

  ModuleVector basis_vector(const AlcoveElement& x) const {
    return ModuleVector::basis_vector(parity_, x);
  }

  /// m * (H_s + v)
  ModuleVector act_underline(const ModuleVector& m, int s) const {
    check(m);
    ModuleVector r(parity_);
    for (const auto& [x, p] : m.entries()) {
      auto step = group_->right_mult(x, s);
      switch (step.step) {
        case Step::UpIn:
          r.add(*step.element, p);
          r.add(x, p * LaurentPoly::v());
          break;
        case Step::DownIn:
          r.add(*step.element, p);
          r.add(x, p * LaurentPoly::monomial(-1));
          break;
        case Step::Out:
          if (parity_ == Parity::Spherical) r.add(x, p * LaurentPoly::v_plus_vinv());
          break;
      }
    }
    return r;
  }

  /// m * (H_s - v^-1) = m * Hs_ - (v + v^-1) m
  ModuleVector act_tilde(const ModuleVector& m, int s) const {
    ModuleVector r = act_underline(m, s);
    r.add_scaled(m, -LaurentPoly::v_plus_vinv());
    return r;
  }

  /// m * H_s = m * Hs_ - v m
  ModuleVector act_standard(const ModuleVector& m, int s) const {
    ModuleVector r = act_underline(m, s);
    r.add_scaled(m, -LaurentPoly::v());
    return r;
  }

  /// m * H_s^-1, using H_s^-1 = H_s + v - v^-1.
  ModuleVector act_inverse(const ModuleVector& m, int s) const {
    ModuleVector r = act_standard(m, s);
    r.add_scaled(m, LaurentPoly{{1, 1}, {-1, -1}});
    return r;
  }

  /// Bar involution: coefficients are barred and each X_x is replaced by
  /// X_e * H_{s_1}^-1 ... H_{s_k}^-1 along the canonical word of x.
  ModuleVector dualize(const ModuleVector& m) const {
    check(m);
    ModuleVector r(parity_);
    for (const auto& [x, p] : m.entries()) r.add_scaled(dual_of_basis(x), p.bar());
    return r;
  }

  /// Dual of X_x computed along an arbitrary reduced word of x. Agrees with
  /// dualize() for every reduced word; exposed for checking that.
  ModuleVector dual_along_word(std::string_view word) const {
    ModuleVector r = basis_vector(group_->identity());
    for (char c : word) r = act_inverse(r, c - '0');
    return r;
  }

  const ModuleVector& dual_of_basis(const AlcoveElement& x) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = duals_.find(x); it != duals_.end()) return it->second;
    }
    ModuleVector d(parity_);
    if (x.length() == 0) {
      d = basis_vector(x);
    } else {
      const int s = x.word().back() - '0';
      auto prefix = group_->right_mult(x, s);
      d = act_inverse(dual_of_basis(*prefix.element), s);
    }
    std::lock_guard lock(mutex_);
    return duals_.emplace(x, std::move(d)).first->second;
  }

 private:
  void check(const ModuleVector& m) const {
    if (m.parity() != parity_) throw ConfigError("module vector parity does not match module");
  }

  const AffineWeylGroup* group_;
  Parity parity_;
  mutable std::mutex mutex_;
  mutable std::map<AlcoveElement, ModuleVector> duals_;
};

inline ModuleVector act_underline_Hs(const HeckeModule& mod, const ModuleVector& m, int s) {
  return mod.act_underline(m, s);
}
inline ModuleVector act_tilde_Hs(const HeckeModule& mod, const ModuleVector& m, int s) {
  return mod.act_tilde(m, s);
}
inline ModuleVector dualize(const HeckeModule& mod, const ModuleVector& m) {
  return mod.dualize(m);
}

}  // namespace tiltchar

// Canonical (Kazhdan-Lusztig) bases of the spherical and antispherical
// modules, the Deodhar tilde bases, one-step coefficients for H_s + v, and
// the inverse polynomials m^{y,x}.
#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tiltchar/affine_weyl.hpp"
#include "tiltchar/hecke.hpp"
#include "tiltchar/laurent.hpp"

namespace tiltchar {

class KLTable {
 public:
  using Row = std::map<AlcoveElement, LaurentPoly>;

  /// max_len bounds the inverse polynomials; canonical basis elements beyond
  /// it can still be requested and are computed on demand.
  KLTable(const AffineWeylGroup& group, Parity parity, int max_len)
      : module_(group, parity), max_len_(max_len) {
    if (max_len < 0) throw RangeError("KL table: negative length bound");
  }

  const AffineWeylGroup& group() const { return module_.group(); }
  const HeckeModule& module() const { return module_; }
  Parity parity() const { return module_.parity(); }
  int max_len() const { return max_len_; }

  std::vector<AlcoveElement> elements() const { return group().enumerate_wplus(max_len_); }

  /// The self-dual element X_x + sum_{y<x} p_{y,x} X_y with p_{y,x} in vZ[v],
  /// built along the canonical word of x.
  const ModuleVector& kl_basis(const AlcoveElement& x) const {
    std::lock_guard lock(mutex_);
    if (auto it = basis_.find(x); it != basis_.end()) return it->second;
    ModuleVector b = x.length() == 0 ? module_.basis_vector(x) : [&] {
      const int s = x.word().back() - '0';
      const AlcoveElement prefix = *group().right_mult(x, s).element;
      return clean(module_.act_underline(kl_basis(prefix), s), x, /*tilde=*/false);
    }();
    check_canonical(b, x, false);
    return basis_.emplace(x, std::move(b)).first->second;
  }

  /// The same recursion run along a caller-chosen reduced word instead of
  /// the canonical one. Constant-term corrections still use kl_basis().
  ModuleVector kl_basis_along(std::string_view word) const {
    ModuleVector b = module_.basis_vector(group().identity());
    AlcoveElement cur = group().identity();
    for (char c : word) {
      const int s = c - '0';
      auto step = group().right_mult(cur, s);
      if (step.step != Step::UpIn)
        throw ConfigError("kl_basis_along: '" + std::string(word) + "' is not a reduced W+ word");
      cur = *step.element;
      std::lock_guard lock(mutex_);
      b = clean(module_.act_underline(b, s), cur, false);
    }
    return b;
  }

  /// Deodhar's variant: self-dual, coefficient 1 at x, all others in
  /// v^-1 Z[v^-1]; built with H_s - v^-1.
  const ModuleVector& tilde_basis(const AlcoveElement& x) const {
    std::lock_guard lock(mutex_);
    if (auto it = tilde_.find(x); it != tilde_.end()) return it->second;
    ModuleVector b = x.length() == 0 ? module_.basis_vector(x) : [&] {
      const int s = x.word().back() - '0';
      const AlcoveElement prefix = *group().right_mult(x, s).element;
      return clean(module_.act_tilde(tilde_basis(prefix), s), x, /*tilde=*/true);
    }();
    check_canonical(b, x, true);
    return tilde_.emplace(x, std::move(b)).first->second;
  }

  /// Coefficient of X_y in the canonical basis element of x.
  LaurentPoly kl_poly(const AlcoveElement& y, const AlcoveElement& x) const {
    return kl_basis(x).coefficient(y);
  }

  LaurentPoly tilde_poly(const AlcoveElement& y, const AlcoveElement& x) const {
    return tilde_basis(x).coefficient(y);
  }

  /// Coefficients of (canonical x) * (H_s + v) in the standard basis, with the
  /// leading X_{xs} term removed. Requires xs > x inside W+.
  Row ws_coeffs(const AlcoveElement& x, int s) const {
    auto step = group().right_mult(x, s);
    if (step.step != Step::UpIn)
      throw ConfigError("ws_coeffs: x*s must be a longer element of W+");
    ModuleVector prod = module_.act_underline(kl_basis(x), s);
    Row out = prod.entries();
    out.erase(*step.element);
    return out;
  }

  /// m^{z,x}, defined by sum_z (-1)^{l(z)+l(x)} m^{z,x} m_{z,y} = delta_{x,y}.
  LaurentPoly inverse_poly(const AlcoveElement& z, const AlcoveElement& x) const {
    const Row& row = inverse_row(z);
    auto it = row.find(x);
    return it == row.end() ? LaurentPoly() : it->second;
  }

  /// All nonzero m^{z,x} for fixed z.
  const Row& inverse_row(const AlcoveElement& z) const {
    if (z.length() > max_len_)
      throw RangeError("inverse polynomial requested beyond length bound " +
                       std::to_string(max_len_));
    materialize_inverse();
    std::lock_guard lock(mutex_);
    return inverse_rows_.at(z);
  }

  /// Inserts a canonical basis element computed elsewhere (e.g. loaded from
  /// a cache file). The leading coefficient and degree bounds are checked.
  void seed_basis(const AlcoveElement& x, ModuleVector b) {
    check_canonical(b, x, false);
    std::lock_guard lock(mutex_);
    basis_.emplace(x, std::move(b));
  }

 private:
  // Removes constant terms below the leading element, longest first, by
  // subtracting integer multiples of already-known basis elements. Each
  // subtraction only touches the chosen element and shorter ones.
  ModuleVector clean(ModuleVector v, const AlcoveElement& lead, bool tilde) const {
    AlcoveElement cursor = lead;
    for (;;) {
      const auto& e = v.entries();
      auto it = e.lower_bound(cursor);
      if (it == e.begin()) break;
      --it;
      cursor = it->first;
      Integer c = it->second.coeff(0);
      if (c == 0) continue;
      const ModuleVector& corr = tilde ? tilde_basis(cursor) : kl_basis(cursor);
      v.add_scaled(corr, LaurentPoly(Integer(-c)));
    }
    return v;
  }

  void check_canonical(const ModuleVector& b, const AlcoveElement& x, bool tilde) const {
    for (const auto& [y, p] : b.entries()) {
      bool ok = y == x ? p == LaurentPoly(1)
                       : (y.length() < x.length() &&
                          (tilde ? p.max_degree() <= -1 : p.min_degree() >= 1));
      if (!ok)
        throw std::logic_error("canonical basis of " + x.label() + " has bad coefficient " +
                               p.to_string() + " at " + y.label());
    }
    if (b.coefficient(x) != LaurentPoly(1))
      throw std::logic_error("canonical basis of " + x.label() + " lacks leading term");
  }

  void materialize_inverse() const {
    std::lock_guard lock(mutex_);
    if (inverse_ready_) return;
    const auto elems = elements();
    for (const auto& y : elems) inverse_rows_[y];
    // Column by column: m^{x,x} = 1, then back-substitution in length order.
    for (std::size_t ix = 0; ix < elems.size(); ++ix) {
      const AlcoveElement& x = elems[ix];
      Row col;
      col.emplace(x, LaurentPoly(1));
      for (std::size_t iy = ix + 1; iy < elems.size(); ++iy) {
        const AlcoveElement& y = elems[iy];
        LaurentPoly sum;
        for (const auto& [z, mzy] : kl_basis(y).entries()) {
          if (z == y) continue;
          auto it = col.find(z);
          if (it == col.end()) continue;
          LaurentPoly term = it->second * mzy;
          if ((z.length() + x.length()) % 2) sum -= term;
          else sum += term;
        }
        if (sum.is_zero()) continue;
        col.emplace(y, (y.length() + x.length()) % 2 ? sum : -sum);
      }
      for (auto& [y, p] : col) inverse_rows_[y].emplace(x, std::move(p));
    }
    inverse_ready_ = true;
  }

  HeckeModule module_;
  int max_len_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<AlcoveElement, ModuleVector> basis_;
  mutable std::map<AlcoveElement, ModuleVector> tilde_;
  mutable std::map<AlcoveElement, Row> inverse_rows_;
  mutable bool inverse_ready_ = false;
};

/// The spherical and antispherical tables over one group, sharing a length
/// bound. Character formulas need both.
struct KLTables {
  KLTables(const AffineWeylGroup& group, int max_len)
      : spherical(group, Parity::Spherical, max_len),
        antispherical(group, Parity::Antispherical, max_len) {}

  const AffineWeylGroup& group() const { return spherical.group(); }
  int max_len() const { return spherical.max_len(); }
  const KLTable& table(Parity p) const {
    return p == Parity::Spherical ? spherical : antispherical;
  }
  KLTable& table(Parity p) { return p == Parity::Spherical ? spherical : antispherical; }

  KLTable spherical;
  KLTable antispherical;
};

}  // namespace tiltchar

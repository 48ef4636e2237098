// Character formulas on top of the KL tables.
//
// Through the Grothendieck-group identification of the antispherical module,
// the standard basis N_A stands for Weyl modules, the canonical basis for
// tilting modules and the tilde basis for simple modules. The spherical
// inverse polynomials m^{A,B} give Weyl-module composition multiplicities
// and the antispherical n_{B,A} give Weyl multiplicities in tilting modules.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tiltchar/diagram.hpp"
#include "tiltchar/errors.hpp"
#include "tiltchar/kl.hpp"

namespace tiltchar {

using GradedCharacter = LoewyDiagram<AlcoveElement>;
using Multiplicities = std::map<AlcoveElement, Integer>;

namespace detail {
inline void require_in_range(const KLTables& t, const AlcoveElement& a) {
  if (a.length() > t.max_len())
    throw RangeError("alcove " + a.label() + " has length " + std::to_string(a.length()) +
                     ", beyond the table bound " + std::to_string(t.max_len()));
}
inline void require_in_range(const KLTable& t, const AlcoveElement& a) {
  if (a.length() > t.max_len())
    throw RangeError("alcove " + a.label() + " has length " + std::to_string(a.length()) +
                     ", beyond the table bound " + std::to_string(t.max_len()));
}
}  // namespace detail

/// t_{B,A} = sum_C n_{C,A} * bar(m^{C,B}).
inline LaurentPoly tilting_poly(const KLTables& t, const AlcoveElement& b, const AlcoveElement& a) {
  detail::require_in_range(t, a);
  LaurentPoly sum;
  for (const auto& [c, n] : t.antispherical.kl_basis(a).entries())
    sum += n * t.spherical.inverse_poly(c, b).bar();
  return sum;
}

/// All nonzero t_{B,A} for fixed A.
inline std::map<AlcoveElement, LaurentPoly> tilting_column(const KLTables& t,
                                                           const AlcoveElement& a) {
  detail::require_in_range(t, a);
  std::map<AlcoveElement, LaurentPoly> out;
  for (const auto& [c, n] : t.antispherical.kl_basis(a).entries())
    for (const auto& [b, m] : t.spherical.inverse_row(c)) {
      LaurentPoly term = n * m.bar();
      auto [it, inserted] = out.try_emplace(b, term);
      if (!inserted) it->second += term;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

/// Loewy layers of the tilting module: entry(B, i) = coefficient of v^|i| in
/// t_{B,A}.
inline GradedCharacter tilting_layers(const KLTables& t, const AlcoveElement& a) {
  GradedCharacter g;
  for (const auto& [b, poly] : tilting_column(t, a)) {
    const int deg = std::max(-*poly.min_degree(), *poly.max_degree());
    for (int i = -deg; i <= deg; ++i) g.add(b, i, poly.coeff(i < 0 ? -i : i));
  }
  return g;
}

/// Composition multiplicities of the Weyl module: B -> m^{A,B}(1).
inline Multiplicities weyl_simple_mults(const KLTables& t, const AlcoveElement& a) {
  detail::require_in_range(t, a);
  Multiplicities out;
  for (const auto& [b, m] : t.spherical.inverse_row(a))
    if (Integer val = m.eval_at_one(); val != 0) out.emplace(b, val);
  return out;
}

/// Weyl multiplicities of the tilting module: B -> n_{B,A}(1).
inline Multiplicities tilting_weyl_mults(const KLTables& t, const AlcoveElement& a) {
  detail::require_in_range(t, a);
  Multiplicities out;
  for (const auto& [b, n] : t.antispherical.kl_basis(a).entries())
    if (Integer val = n.eval_at_one(); val != 0) out.emplace(b, val);
  return out;
}

/// Layer i of the parity filtration: B -> coefficient of v^i in m^{A,B}.
inline Multiplicities parity_layer(const KLTables& t, const AlcoveElement& a, int i) {
  detail::require_in_range(t, a);
  if (i < 0) throw RangeError("parity layer index must be non-negative");
  Multiplicities out;
  for (const auto& [b, m] : t.spherical.inverse_row(a))
    if (Integer c = m.coeff(i); c != 0) out.emplace(b, c);
  return out;
}

// ---------------------------------------------------------------------------
// Basis changes inside one module.

enum class Basis { Standard, Canonical, Tilde };

inline std::string to_string(Basis b) {
  switch (b) {
    case Basis::Standard: return "standard";
    case Basis::Canonical: return "canonical";
    case Basis::Tilde: return "tilde";
  }
  return "?";
}

/// A module element given by its coordinates in one of the three bases.
struct Coordinates {
  Basis basis;
  ModuleVector coords;
};

namespace detail {
inline const ModuleVector& basis_element(const KLTable& t, Basis b, const AlcoveElement& x) {
  return b == Basis::Canonical ? t.kl_basis(x) : t.tilde_basis(x);
}
}  // namespace detail

/// Unitriangular change of coordinates. Every support element must be within
/// the table's length bound.
inline Coordinates basis_change(const KLTable& t, const Coordinates& in, Basis target) {
  for (const auto& [x, p] : in.coords.entries()) detail::require_in_range(t, x);
  ModuleVector standard(in.coords.parity());
  if (in.basis == Basis::Standard) {
    standard = in.coords;
  } else {
    for (const auto& [x, p] : in.coords.entries())
      standard.add_scaled(detail::basis_element(t, in.basis, x), p);
  }
  if (target == Basis::Standard) return {Basis::Standard, standard};
  ModuleVector out(standard.parity());
  ModuleVector rest = standard;
  while (!rest.is_zero()) {
    const AlcoveElement lead = rest.leading();
    detail::require_in_range(t, lead);
    const LaurentPoly c = rest.coefficient(lead);
    out.add(lead, c);
    rest.add_scaled(detail::basis_element(t, target, lead), -c);
  }
  return {target, out};
}

/// Result of multiplying an element by H_s + v and writing it in the tilde
/// basis, split as
///   (v + v^-1) * (input tilde coordinates)
///   + sum_B c_B * tilde(Bs)                 (B with Bs > B in W+)
///   + sum_B c_B * (remaining tilde terms of tilde(B) * (H_s - v^-1)).
struct WallCrossing {
  int generator = 0;
  ModuleVector tilde_input;
  ModuleVector scaled;
  ModuleVector shifted;
  ModuleVector correction;
  /// Remaining tilde terms of tilde(B) * (H_s - v^-1), before scaling by c_B.
  std::map<AlcoveElement, ModuleVector> correction_by_source;
  ModuleVector total() const { return scaled + shifted + correction; }
};

/// Tilde coordinates of tilde(B) * (H_s - v^-1), split into the coefficient
/// at Bs (when Bs > B in W+) and everything else.
inline std::pair<std::optional<AlcoveElement>, ModuleVector> tilde_step(const KLTable& t,
                                                                        const AlcoveElement& b,
                                                                        int s) {
  const ModuleVector prod = t.module().act_tilde(t.tilde_basis(b), s);
  ModuleVector coords = basis_change(t, {Basis::Standard, prod}, Basis::Tilde).coords;
  auto step = t.group().right_mult(b, s);
  if (step.step != Step::UpIn) return {std::nullopt, coords};
  const LaurentPoly lead = coords.coefficient(*step.element);
  if (lead != LaurentPoly(1))
    throw std::logic_error("tilde step at " + b.label() + " has leading coefficient " +
                           lead.to_string());
  coords.add(*step.element, LaurentPoly(-1));
  return {step.element, coords};
}

/// Character of the wall-crossed module: `in` (any basis) times H_s + v,
/// decomposed over the tilde basis.
inline WallCrossing wall_cross_char(const KLTable& t, const Coordinates& in, int s) {
  const Parity par = in.coords.parity();
  WallCrossing w{s, ModuleVector(par), ModuleVector(par), ModuleVector(par), ModuleVector(par), {}};
  w.tilde_input = basis_change(t, in, Basis::Tilde).coords;
  w.scaled = LaurentPoly::v_plus_vinv() * w.tilde_input;
  for (const auto& [b, c] : w.tilde_input.entries()) {
    auto [up, rest] = tilde_step(t, b, s);
    if (up) w.shifted.add(*up, c);
    w.correction.add_scaled(rest, c);
    w.correction_by_source.emplace(b, std::move(rest));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Partial characters along a Weyl filtration.

/// Weyl-filtration order for the tilting module of A: the alcoves B with
/// n_{B,A} != 0, longest first, ShortLex within a length. Starts with A.
inline std::vector<AlcoveElement> delta_order(const KLTables& t, const AlcoveElement& a) {
  detail::require_in_range(t, a);
  std::vector<AlcoveElement> out;
  for (const auto& [b, n] : t.antispherical.kl_basis(a).entries()) out.push_back(b);
  std::sort(out.begin(), out.end(), [](const AlcoveElement& x, const AlcoveElement& y) {
    if (x.length() != y.length()) return x.length() > y.length();
    return x.word() < y.word();
  });
  return out;
}

/// Which Weyl-factor weight multiplies the j-th summand of a partial sum.
enum class PartialWeighting {
  /// n_{lambda_j, lambda_k}: the k-th factor's own column.
  FactorColumn,
  /// n_{lambda_j, A}: the column of the tilting module itself.
  TiltingColumn,
};

/// lambda -> ( sum_{j<=terms} w_j * bar(m^{lambda_j, lambda}) )_{<= i}, where
/// (p)_{<=i} sums the coefficients of v^j for j <= i and `terms` defaults to
/// k. k = 0 gives the empty sum; otherwise 0 <= terms <= k.
inline Multiplicities partial_character(const KLTables& t, const AlcoveElement& a, int k, int i,
                                        PartialWeighting weighting = PartialWeighting::FactorColumn,
                                        std::optional<int> terms = std::nullopt) {
  const auto order = delta_order(t, a);
  if (k < 0 || k > static_cast<int>(order.size()))
    throw RangeError("partial character: k = " + std::to_string(k) + " outside 0.." +
                     std::to_string(order.size()));
  const int count = terms.value_or(k);
  if (count < 0 || count > k)
    throw RangeError("partial character: number of terms " + std::to_string(count) +
                     " outside 0.." + std::to_string(k));
  Multiplicities out;
  if (k == 0) return out;
  const AlcoveElement& column = weighting == PartialWeighting::TiltingColumn ? a : order[k - 1];
  std::map<AlcoveElement, LaurentPoly> sums;
  for (int j = 0; j < count; ++j) {
    const LaurentPoly w = t.antispherical.kl_poly(order[j], column);
    if (w.is_zero()) continue;
    for (const auto& [lam, m] : t.spherical.inverse_row(order[j])) sums[lam] += w * m.bar();
  }
  for (const auto& [lam, p] : sums)
    if (Integer c = p.sum_up_to(i); c != 0) out.emplace(lam, c);
  return out;
}

}  // namespace tiltchar

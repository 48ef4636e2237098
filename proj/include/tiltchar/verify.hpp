// Batch invariant sweep over a pair of KL tables. Each property reports how
// many instances were checked and the first counterexample, if any.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tiltchar/balance.hpp"
#include "tiltchar/characters.hpp"
#include "tiltchar/io.hpp"

namespace tiltchar {

struct PropertyResult {
  explicit PropertyResult(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::optional<json> first_counterexample;

  void record(bool ok, const std::function<json()>& describe) {
    ++checked;
    if (ok) return;
    ++failed;
    if (!first_counterexample) first_counterexample = describe();
  }
};

struct VerifyReport {
  std::vector<PropertyResult> properties;
  bool ok() const {
    for (const auto& p : properties)
      if (p.failed) return false;
    return true;
  }
};

namespace detail {
inline LaurentPoly signed_poly(int parity_sum, const LaurentPoly& p) { return parity_sum % 2 ? -p : p; }
}  // namespace detail

inline VerifyReport verify_sweep(const KLTables& t) {
  const auto elems = t.group().enumerate_wplus(t.max_len());
  VerifyReport report;
  report.properties.reserve(8);  // references below must stay valid
  auto& self_dual = report.properties.emplace_back("canonical_self_dual");
  auto& tilde_dual = report.properties.emplace_back("tilde_self_dual");
  auto& deodhar = report.properties.emplace_back("deodhar_identity");
  auto& ortho = report.properties.emplace_back("orthogonality");
  auto& t_dual = report.properties.emplace_back("tilting_poly_self_dual");
  auto& consistency = report.properties.emplace_back("soergel_lusztig_consistency");
  auto& balance = report.properties.emplace_back("balance_equals_t");

  for (Parity par : {Parity::Spherical, Parity::Antispherical}) {
    const KLTable& tab = t.table(par);
    const KLTable& other = t.table(opposite(par));
    for (const auto& x : elems) {
      const auto& kb = tab.kl_basis(x);
      self_dual.record(tab.module().dualize(kb) == kb, [&] {
        return json{{"parity", to_string(par)}, {"x", x.word()}, {"basis", vector_to_json(kb)}};
      });
      const auto& tb = tab.tilde_basis(x);
      tilde_dual.record(tab.module().dualize(tb) == tb, [&] {
        return json{{"parity", to_string(par)}, {"x", x.word()}, {"basis", vector_to_json(tb)}};
      });
      for (const auto& y : elems) {
        if (y.length() > x.length()) break;
        const LaurentPoly lhs = tab.tilde_poly(y, x);
        const LaurentPoly rhs = detail::signed_poly(x.length() + y.length(), other.kl_poly(y, x).bar());
        deodhar.record(lhs == rhs, [&] {
          return json{{"parity", to_string(par)}, {"x", x.word()}, {"y", y.word()},
                      {"tilde", poly_to_json(lhs)}, {"signed_bar", poly_to_json(rhs)}};
        });
      }
    }
    for (const auto& x : elems)
      for (const auto& y : elems) {
        LaurentPoly sum;
        for (const auto& [z, mzy] : tab.kl_basis(y).entries())
          sum += detail::signed_poly(z.length() + x.length(), tab.inverse_poly(z, x) * mzy);
        const LaurentPoly expect = x == y ? LaurentPoly(1) : LaurentPoly();
        ortho.record(sum == expect, [&] {
          return json{{"parity", to_string(par)}, {"x", x.word()}, {"y", y.word()},
                      {"sum", poly_to_json(sum)}};
        });
      }
  }

  for (const auto& a : elems) {
    const auto column = tilting_column(t, a);
    for (const auto& b : elems) {
      if (b.length() > a.length()) break;
      const LaurentPoly tp = tilting_poly(t, b, a);
      t_dual.record(tp.is_self_dual(), [&] {
        return json{{"A", a.word()}, {"B", b.word()}, {"t", poly_to_json(tp)}};
      });
    }
    const auto soergel = tilting_weyl_mults(t, a);
    Multiplicities composed;
    for (const auto& [b, nb] : soergel)
      for (const auto& [l, ml] : weyl_simple_mults(t, b)) composed[l] += nb * ml;
    Multiplicities direct;
    for (const auto& [b, p] : column)
      if (auto v = p.eval_at_one(); v != 0) direct.emplace(b, v);
    std::erase_if(composed, [](const auto& kv) { return kv.second == 0; });
    consistency.record(composed == direct, [&] { return json{{"A", a.word()}}; });

    try {
      const auto run = balance_from_alcove(t, a);
      // Heads of each label sit at -d, once per unit of the v^d coefficient
      // of n_{label,A}.
      std::map<AlcoveElement, LaurentPoly> heads;
      for (const auto& e : run.state.trace) heads[e.label] += LaurentPoly::monomial(-e.head_offset);
      const bool heads_ok = heads == t.antispherical.kl_basis(a).entries();
      balance.record(run.equal && heads_ok, [&] {
        return json{{"A", a.word()},
                    {"equal", run.equal},
                    {"heads_match_n", heads_ok},
                    {"balanced", diagram_to_json<AlcoveElement, std::less<AlcoveElement>>(
                                     run.character, [](const AlcoveElement& x) { return x.word(); })},
                    {"expected", diagram_to_json<AlcoveElement, std::less<AlcoveElement>>(
                                     run.expected, [](const AlcoveElement& x) { return x.word(); })}};
      });
    } catch (const BalanceError& err) {
      balance.record(false, [&] { return json{{"A", a.word()}, {"error", err.what()}}; });
    }
  }

  if (t.group().datum().rank() == 1) {
    auto& closed = report.properties.emplace_back(PropertyResult{"a1_closed_forms"});
    for (const auto& x : elems)
      for (const auto& y : elems) {
        if (y.length() > x.length()) break;
        const int d = x.length() - y.length();
        const LaurentPoly m = LaurentPoly::monomial(d);
        const LaurentPoly n = d == 0 ? LaurentPoly(1) : d == 1 ? LaurentPoly::v() : LaurentPoly();
        const LaurentPoly inv = d == 0 ? LaurentPoly(1) : d == 1 ? LaurentPoly::v() : LaurentPoly();
        const bool ok = t.spherical.kl_poly(y, x) == m && t.antispherical.kl_poly(y, x) == n &&
                        t.spherical.inverse_poly(x, y) == inv;
        closed.record(ok, [&] { return json{{"x", x.word()}, {"y", y.word()}}; });
      }
  }
  return report;
}

}  // namespace tiltchar

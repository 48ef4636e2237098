#include <random>

#include <gtest/gtest.h>

#include "tiltchar/characters.hpp"

using namespace tiltchar;

namespace {

const LaurentPoly v = LaurentPoly::v();
const LaurentPoly vinv = LaurentPoly::monomial(-1);

struct A1 {
  AffineWeylGroup g{RootDatum::builtin("A1")};
  KLTables t{g, 6};
  AlcoveElement e = g.identity();
  AlcoveElement s0 = g.parse_word("0");
  AlcoveElement s01 = g.parse_word("01");
  AlcoveElement s010 = g.parse_word("010");
};

struct B2 {
  AffineWeylGroup g{RootDatum::builtin("B2")};
  KLTables t{g, 6};
};

}  // namespace

TEST(Characters, TiltingPolyA1) {
  A1 a;
  EXPECT_EQ(tilting_poly(a.t, a.s01, a.s01), LaurentPoly(1));
  EXPECT_EQ(tilting_poly(a.t, a.s0, a.s01), LaurentPoly::v_plus_vinv());
  EXPECT_EQ(tilting_poly(a.t, a.e, a.s01), LaurentPoly(1));
  EXPECT_THROW(tilting_poly(a.t, a.e, a.g.parse_word("0101010")), RangeError);
}

TEST(Characters, TiltingLayers) {
  A1 a;
  GradedCharacter expect_e;
  expect_e.add(a.e, 0, 1);
  EXPECT_EQ(tilting_layers(a.t, a.e), expect_e);

  GradedCharacter expect;
  expect.add(a.s01, 0, 1);
  expect.add(a.e, 0, 1);
  expect.add(a.s0, -1, 1);
  expect.add(a.s0, 1, 1);
  const auto got = tilting_layers(a.t, a.s01);
  EXPECT_EQ(got, expect);
  EXPECT_TRUE(got.is_balanced());

  B2 b;
  for (const auto& x : b.g.enumerate_wplus(6)) EXPECT_TRUE(tilting_layers(b.t, x).is_balanced());
}

TEST(Characters, WeylSimpleMults) {
  A1 a;
  EXPECT_EQ(weyl_simple_mults(a.t, a.e), (Multiplicities{{a.e, 1}}));
  EXPECT_EQ(weyl_simple_mults(a.t, a.s0), (Multiplicities{{a.s0, 1}, {a.e, 1}}));
  EXPECT_EQ(weyl_simple_mults(a.t, a.s01), (Multiplicities{{a.s01, 1}, {a.s0, 1}}));
}

TEST(Characters, TiltingWeylMults) {
  A1 a;
  EXPECT_EQ(tilting_weyl_mults(a.t, a.e), (Multiplicities{{a.e, 1}}));
  EXPECT_EQ(tilting_weyl_mults(a.t, a.s01), (Multiplicities{{a.s01, 1}, {a.s0, 1}}));
}

TEST(Characters, ParityLayer) {
  A1 a;
  EXPECT_EQ(parity_layer(a.t, a.s01, 0), (Multiplicities{{a.s01, 1}}));
  EXPECT_EQ(parity_layer(a.t, a.s01, 1), (Multiplicities{{a.s0, 1}}));
  EXPECT_TRUE(parity_layer(a.t, a.s01, 2).empty());
  EXPECT_THROW(parity_layer(a.t, a.s01, -1), RangeError);
  B2 b;
  for (const auto& x : b.g.enumerate_wplus(6)) {
    EXPECT_EQ(parity_layer(b.t, x, 0), (Multiplicities{{x, 1}}));
    for (int i = x.length() + 1; i <= x.length() + 3; ++i) EXPECT_TRUE(parity_layer(b.t, x, i).empty());
  }
}

// Soergel's multiplicities composed with Lusztig's equal t at v = 1.
TEST(Characters, SoergelLusztigConsistency) {
  B2 b;
  for (const auto& a : b.g.enumerate_wplus(6)) {
    Multiplicities composed;
    for (const auto& [x, n] : tilting_weyl_mults(b.t, a))
      for (const auto& [l, m] : weyl_simple_mults(b.t, x)) composed[l] += n * m;
    std::erase_if(composed, [](const auto& kv) { return kv.second == 0; });
    Multiplicities layered;
    const auto layers = tilting_layers(b.t, a);
    for (const auto& [off, layer] : layers.layers())
      for (const auto& [l, m] : layer) layered[l] += m;
    EXPECT_EQ(composed, layered) << a.word();
  }
}

TEST(Characters, BasisChangeExamples) {
  A1 a;
  const auto& tab = a.t.antispherical;
  ModuleVector canon(Parity::Antispherical);
  canon.add(a.s01, 1);
  EXPECT_EQ(basis_change(tab, {Basis::Canonical, canon}, Basis::Standard).coords, tab.kl_basis(a.s01));
  // N_0 = tilde(0) + v^-1 tilde(e).
  ModuleVector n0 = ModuleVector::basis_vector(Parity::Antispherical, a.s0);
  ModuleVector expect(Parity::Antispherical);
  expect.add(a.s0, 1);
  expect.add(a.e, vinv);
  EXPECT_EQ(basis_change(tab, {Basis::Standard, n0}, Basis::Tilde).coords, expect);
  ModuleVector far(Parity::Antispherical);
  far.add(a.g.parse_word("0101010"), 1);
  EXPECT_THROW(basis_change(tab, {Basis::Standard, far}, Basis::Tilde), RangeError);
}

TEST(Characters, BasisChangeRoundTrips) {
  B2 b;
  std::mt19937 rng(99);
  const auto xs = b.g.enumerate_wplus(6);
  std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
  std::uniform_int_distribution<int> exp(-2, 2), c(-3, 3);
  for (Parity p : {Parity::Spherical, Parity::Antispherical})
    for (int trial = 0; trial < 25; ++trial) {
      ModuleVector m(p);
      for (int k = 0; k < 4; ++k) m.add(xs[pick(rng)], LaurentPoly::monomial(exp(rng), c(rng)));
      const auto& tab = b.t.table(p);
      for (Basis mid : {Basis::Canonical, Basis::Tilde}) {
        const auto there = basis_change(tab, {Basis::Standard, m}, mid);
        EXPECT_EQ(basis_change(tab, there, Basis::Standard).coords, m);
        for (Basis other : {Basis::Canonical, Basis::Tilde})
          EXPECT_EQ(basis_change(tab, basis_change(tab, there, other), mid).coords, there.coords);
      }
    }
}

TEST(Characters, WallCrossIdentityAlcove) {
  A1 a;
  const auto& tab = a.t.antispherical;
  ModuleVector in(Parity::Antispherical);
  in.add(a.e, 1);
  const auto w = wall_cross_char(tab, {Basis::Canonical, in}, 0);
  ModuleVector shifted(Parity::Antispherical);
  shifted.add(a.s0, 1);
  EXPECT_EQ(w.shifted, shifted);
  EXPECT_TRUE(w.correction.is_zero());
  EXPECT_EQ(w.scaled, LaurentPoly::v_plus_vinv() * ModuleVector::basis_vector(Parity::Antispherical, a.e));
}

// Total of the three parts equals the direct product re-expressed in the
// tilde basis.
TEST(Characters, WallCrossTotalMatchesDirect) {
  B2 b;
  for (Parity p : {Parity::Spherical, Parity::Antispherical}) {
    const auto& tab = b.t.table(p);
    for (const auto& x : b.g.enumerate_wplus(5))
      for (int s = 0; s < b.g.num_generators(); ++s) {
        ModuleVector c(p);
        c.add(x, 1);
        const auto w = wall_cross_char(tab, {Basis::Canonical, c}, s);
        const auto direct = basis_change(tab, {Basis::Standard, tab.module().act_underline(tab.kl_basis(x), s)},
                                         Basis::Tilde);
        EXPECT_EQ(w.total(), direct.coords) << x.word() << " s=" << s;
        EXPECT_EQ(w.tilde_input, basis_change(tab, {Basis::Canonical, c}, Basis::Tilde).coords);
        // When xs < x the canonical element is an eigenvector up to lower terms.
        if (b.g.right_mult(x, s).step == Step::DownIn) {
          const auto direct_std = tab.module().act_underline(tab.kl_basis(x), s);
          EXPECT_EQ(direct_std, LaurentPoly::v_plus_vinv() * tab.kl_basis(x)) << x.word() << " s=" << s;
        }
      }
  }
}

TEST(Characters, DeltaOrder) {
  B2 b;
  for (const auto& a : b.g.enumerate_wplus(6)) {
    const auto order = delta_order(b.t, a);
    ASSERT_FALSE(order.empty());
    EXPECT_EQ(order.front(), a);
    for (std::size_t i = 1; i < order.size(); ++i) EXPECT_GE(order[i - 1].length(), order[i].length());
  }
}

TEST(Characters, PartialCharacterA1) {
  A1 a;
  // k = 1, i = 0: lambda_1 = "01" with bar(m^{01,lambda}) = 1 at "01" and
  // v^-1 at "0"; both exponents are <= 0.
  EXPECT_EQ(partial_character(a.t, a.s01, 1, 0), (Multiplicities{{a.s01, 1}, {a.s0, 1}}));
  EXPECT_EQ(partial_character(a.t, a.s01, 1, -1), (Multiplicities{{a.s0, 1}}));
  EXPECT_TRUE(partial_character(a.t, a.s01, 0, 5).empty());
  EXPECT_THROW(partial_character(a.t, a.s01, 3, 0), RangeError);
  EXPECT_THROW(partial_character(a.t, a.s01, -1, 0), RangeError);
}

// With the tilting-column weighting and k covering the whole filtration, the
// partial sum is the full t-column.
TEST(Characters, PartialCharacterFullSumIsT) {
  B2 b;
  for (const auto& a : b.g.enumerate_wplus(6)) {
    const int k = static_cast<int>(delta_order(b.t, a).size());
    Multiplicities expect;
    for (const auto& [x, p] : tilting_column(b.t, a)) expect.emplace(x, p.eval_at_one());
    std::erase_if(expect, [](const auto& kv) { return kv.second == 0; });
    EXPECT_EQ(partial_character(b.t, a, k, 1000, PartialWeighting::TiltingColumn), expect) << a.word();
  }
}

namespace {

Integer get(const Multiplicities& m, const AlcoveElement& x) {
  auto it = m.find(x);
  return it == m.end() ? Integer(0) : it->second;
}

// S(terms, i) - S(terms - 1, i) - S(terms, i - 1) + S(terms - 1, i - 1) for
// the k-th filtration factor.
Integer four_term(const KLTables& t, const AlcoveElement& a, int k, int i, const AlcoveElement& lam,
                  PartialWeighting w) {
  return get(partial_character(t, a, k, i, w, k), lam) - get(partial_character(t, a, k, i, w, k - 1), lam) -
         get(partial_character(t, a, k, i - 1, w, k), lam) + get(partial_character(t, a, k, i - 1, w, k - 1), lam);
}

}  // namespace

TEST(Characters, Telescoping) {
  B2 b;
  const auto lambdas = b.g.enumerate_wplus(6);
  for (const auto& a : b.g.enumerate_wplus(4)) {
    const auto order = delta_order(b.t, a);
    for (int k = 1; k <= static_cast<int>(order.size()); ++k)
      for (int i = -6; i <= 6; ++i)
        for (const auto& lam : lambdas) {
          const auto mbar = b.t.spherical.inverse_poly(order[k - 1], lam).bar();
          EXPECT_EQ(four_term(b.t, a, k, i, lam, PartialWeighting::FactorColumn), mbar.coeff(i));
          // Weighting by the tilting column shifts by n_{lambda_k, A}.
          EXPECT_EQ(four_term(b.t, a, k, i, lam, PartialWeighting::TiltingColumn),
                    (b.t.antispherical.kl_poly(order[k - 1], a) * mbar).coeff(i));
        }
  }
}

TEST(Characters, PartialCharacterTermsRange) {
  A1 a;
  EXPECT_THROW(partial_character(a.t, a.s01, 1, 0, PartialWeighting::FactorColumn, 2), RangeError);
  EXPECT_THROW(partial_character(a.t, a.s01, 1, 0, PartialWeighting::FactorColumn, -1), RangeError);
  EXPECT_TRUE(partial_character(a.t, a.s01, 2, 0, PartialWeighting::FactorColumn, 0).empty());
}

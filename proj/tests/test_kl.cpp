#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tiltchar/kl.hpp"

using namespace tiltchar;

namespace {

const LaurentPoly v = LaurentPoly::v();
const LaurentPoly vinv = LaurentPoly::monomial(-1);

ModuleVector vec(Parity p, std::initializer_list<std::pair<AlcoveElement, LaurentPoly>> terms) {
  ModuleVector m(p);
  for (const auto& [x, c] : terms) m.add(x, c);
  return m;
}

LaurentPoly sign(int parity_sum, const LaurentPoly& p) { return parity_sum % 2 ? -p : p; }

}  // namespace

TEST(KL, A1Examples) {
  AffineWeylGroup g(RootDatum::builtin("A1"));
  KLTables t(g, 4);
  const auto e = g.identity();
  const auto s0 = g.parse_word("0");
  const auto s01 = g.parse_word("01");
  EXPECT_EQ(t.antispherical.kl_basis(e), vec(Parity::Antispherical, {{e, 1}}));
  EXPECT_EQ(t.antispherical.kl_basis(s01), vec(Parity::Antispherical, {{s01, 1}, {s0, v}}));
  EXPECT_EQ(t.spherical.kl_basis(s01), vec(Parity::Spherical, {{s01, 1}, {s0, v}, {e, v * v}}));
  EXPECT_EQ(t.antispherical.kl_poly(s01, s01), LaurentPoly(1));
  EXPECT_TRUE(t.antispherical.kl_poly(e, s01).is_zero());
  EXPECT_EQ(t.spherical.kl_poly(e, s01), v * v);
}

TEST(KL, WsCoeffs) {
  AffineWeylGroup g(RootDatum::builtin("A1"));
  KLTables t(g, 4);
  const auto e = g.identity();
  const auto s0 = g.parse_word("0");
  EXPECT_EQ(t.spherical.ws_coeffs(e, 0), (KLTable::Row{{e, v}}));
  EXPECT_EQ(t.spherical.ws_coeffs(s0, 1), (KLTable::Row{{s0, v}, {e, v * v + LaurentPoly(1)}}));
  EXPECT_THROW(t.spherical.ws_coeffs(e, 1), ConfigError);                  // out
  EXPECT_THROW(t.spherical.ws_coeffs(g.parse_word("01"), 1), ConfigError);  // down
}

TEST(KL, TildeExamples) {
  AffineWeylGroup g(RootDatum::builtin("A1"));
  KLTables t(g, 4);
  const auto e = g.identity();
  const auto s0 = g.parse_word("0");
  EXPECT_EQ(t.antispherical.tilde_basis(e), vec(Parity::Antispherical, {{e, 1}}));
  EXPECT_EQ(t.antispherical.tilde_basis(s0), vec(Parity::Antispherical, {{s0, 1}, {e, -vinv}}));
}

TEST(KL, InverseExamples) {
  AffineWeylGroup g(RootDatum::builtin("A1"));
  KLTables t(g, 4);
  const auto e = g.identity();
  const auto s0 = g.parse_word("0");
  const auto s01 = g.parse_word("01");
  EXPECT_EQ(t.spherical.inverse_poly(s01, s01), LaurentPoly(1));
  EXPECT_EQ(t.spherical.inverse_poly(s0, e), v);
  EXPECT_TRUE(t.spherical.inverse_poly(s01, e).is_zero());
  EXPECT_THROW(t.spherical.inverse_poly(g.parse_word("01010"), e), RangeError);
  EXPECT_THROW(KLTable(g, Parity::Spherical, -1), RangeError);
}

TEST(KL, LeadingTermAndDegreeBounds) {
  for (const char* type : {"A2", "B2", "G2"}) {
    AffineWeylGroup g(RootDatum::builtin(type));
    KLTables t(g, 6);
    for (Parity p : {Parity::Spherical, Parity::Antispherical})
      for (const auto& x : g.enumerate_wplus(6)) {
        const auto& b = t.table(p).kl_basis(x);
        const auto& tb = t.table(p).tilde_basis(x);
        EXPECT_EQ(b.coefficient(x), LaurentPoly(1));
        EXPECT_EQ(tb.coefficient(x), LaurentPoly(1));
        for (const auto& [y, c] : b.entries())
          if (!(y == x)) {
            EXPECT_LT(y.length(), x.length());
            EXPECT_GE(*c.min_degree(), 1);
          }
        for (const auto& [y, c] : tb.entries())
          if (!(y == x)) {
            EXPECT_LE(*c.max_degree(), -1);
          }
      }
  }
}

TEST(KL, SelfDualBothParities) {
  for (const char* type : {"A2", "B2", "G2"}) {
    AffineWeylGroup g(RootDatum::builtin(type));
    KLTables t(g, 6);
    for (Parity p : {Parity::Spherical, Parity::Antispherical})
      for (const auto& x : g.enumerate_wplus(6)) {
        const auto& tab = t.table(p);
        EXPECT_EQ(tab.module().dualize(tab.kl_basis(x)), tab.kl_basis(x)) << type << " " << x.word();
        EXPECT_EQ(tab.module().dualize(tab.tilde_basis(x)), tab.tilde_basis(x)) << type << " " << x.word();
      }
  }
}

// The recursion agrees with the direct solution of the self-duality system.
TEST(KL, MatchesSelfDualSolverOracle) {
  for (const auto& [type, L] : std::vector<std::pair<const char*, int>>{{"A2", 6}, {"B2", 6}, {"G2", 5}}) {
    AffineWeylGroup g(RootDatum::builtin(type));
    KLTables t(g, L);
    const auto elems = g.enumerate_wplus(L);
    for (Parity p : {Parity::Spherical, Parity::Antispherical}) {
      const auto& tab = t.table(p);
      for (const auto& x : elems) {
        EXPECT_EQ(oracle::self_dual_solve(tab.module(), x, elems, true), tab.kl_basis(x)) << type << " " << x.word();
        EXPECT_EQ(oracle::self_dual_solve(tab.module(), x, elems, false), tab.tilde_basis(x)) << type << " " << x.word();
      }
    }
  }
}

TEST(KL, DeodharIdentities) {
  for (const char* type : {"A2", "B2"}) {
    AffineWeylGroup g(RootDatum::builtin(type));
    KLTables t(g, 6);
    const auto elems = g.enumerate_wplus(6);
    for (Parity p : {Parity::Spherical, Parity::Antispherical})
      for (const auto& x : elems)
        for (const auto& y : elems)
          EXPECT_EQ(t.table(p).tilde_poly(y, x),
                    sign(x.length() + y.length(), t.table(opposite(p)).kl_poly(y, x).bar()))
              << type << " " << to_string(p) << " y=" << y.word() << " x=" << x.word();
  }
}

TEST(KL, Orthogonality) {
  for (const char* type : {"A1", "A2", "B2", "G2"}) {
    AffineWeylGroup g(RootDatum::builtin(type));
    KLTables t(g, 5);
    const auto elems = g.enumerate_wplus(5);
    for (Parity p : {Parity::Spherical, Parity::Antispherical})
      for (const auto& x : elems)
        for (const auto& y : elems) {
          LaurentPoly sum;
          for (const auto& z : elems)
            sum += sign(z.length() + x.length(), t.table(p).inverse_poly(z, x) * t.table(p).kl_poly(z, y));
          EXPECT_EQ(sum, x == y ? LaurentPoly(1) : LaurentPoly()) << type;
        }
  }
}

TEST(KL, A1ClosedForms) {
  AffineWeylGroup g(RootDatum::builtin("A1"));
  KLTables t(g, 12);
  const auto elems = g.enumerate_wplus(12);
  for (const auto& x : elems)
    for (const auto& y : elems) {
      const int d = x.length() - y.length();
      const LaurentPoly m = d >= 0 ? LaurentPoly::monomial(d) : LaurentPoly();
      const LaurentPoly n = d == 0 ? LaurentPoly(1) : d == 1 ? v : LaurentPoly();
      EXPECT_EQ(t.spherical.kl_poly(y, x), m);
      EXPECT_EQ(t.antispherical.kl_poly(y, x), n);
      EXPECT_EQ(t.spherical.inverse_poly(x, y), n) << x.word() << " " << y.word();
    }
}

TEST(KL, PivotIndependence) {
  AffineWeylGroup g(RootDatum::builtin("B2"));
  KLTables t(g, 7);
  std::size_t compared = 0;
  for (const auto& x : g.enumerate_wplus(7))
    for (const auto& w : g.reduced_words(x))
      for (Parity p : {Parity::Spherical, Parity::Antispherical}) {
        EXPECT_EQ(t.table(p).kl_basis_along(w), t.table(p).kl_basis(x)) << w;
        compared += w != x.word();
      }
  EXPECT_GT(compared, 0u);
  EXPECT_THROW(t.spherical.kl_basis_along("00"), ConfigError);
}

TEST(KL, MemoizedReturnsSameObject) {
  AffineWeylGroup g(RootDatum::builtin("B2"));
  KLTables t(g, 4);
  const auto x = g.parse_word("0121");
  EXPECT_EQ(&t.antispherical.kl_basis(x), &t.antispherical.kl_basis(x));
}

TEST(KL, SeedRejectsNonCanonical) {
  AffineWeylGroup g(RootDatum::builtin("A1"));
  KLTable tab(g, Parity::Antispherical, 3);
  const auto s0 = g.parse_word("0");
  EXPECT_THROW(tab.seed_basis(s0, vec(Parity::Antispherical, {{s0, 1}, {g.identity(), LaurentPoly(1)}})),
               std::logic_error);
}

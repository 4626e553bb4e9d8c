#include <gtest/gtest.h>

#include <random>

#include "kmr/realization.hpp"

using namespace kmr;

class Real : public ::testing::Test {
 protected:
  Real() : g(build_affine_data("A1~")), E(g.data().label_of("E")), H(g.data().label_of("H")), F(g.data().label_of("F")) {}
  Poly X(int a, int n) const { return Poly::var({a, n}); }
  const AffineData& ad() const { return g.data(); }
  LoopAlgebra g;
  int E, H, F;
};

TEST_F(Real, RhoOfFZeroMinusOne) {
  VectorField v = rho(g, LieElt::j(E, -1), 2);
  EXPECT_EQ(v.at({E, 0}), Q(2) * X(H, 1) + Q(2) * X(E, 0) * X(F, 1));
  EXPECT_EQ(v.at({E, 1}), Q(2) * X(H, 2) + Q(2) * X(H, 1) * X(H, 1));
  EXPECT_EQ(v.at({H, 1}), -(X(F, 2) + Q(2) * X(F, 1) * X(H, 1)));
  EXPECT_EQ(v.at({F, 1}), -(X(F, 1) * X(F, 1)));
}

TEST_F(Real, RhoOfFOneLeadingTerm) {
  VectorField v = rho(g, LieElt::j(F, 0), 3);
  EXPECT_EQ(v.at({E, 0}), -(X(E, 0) * X(E, 0)));
}

TEST_F(Real, RhoOfD) {
  // [d, J_{a,n}] = n J_{a,n}; the flow is the Euler-type field -sum n X D on the plus side
  VectorField v = rho(g, LieElt::d(), 4);
  for (const GenIdx& x : index_window(ad(), 4, Side::Plus)) {
    if (x.n == 0) {
      EXPECT_TRUE(v.at(x).is_zero());
      continue;
    }
    EXPECT_EQ(v.at(x), Q(-x.n) * X(x.label, x.n)) << genidx_str(ad(), x);
  }
  VectorField id = iota_d(ad(), 4);
  for (const auto& [x, p] : v.coeffs) EXPECT_EQ(id.at(x), p);
}

TEST_F(Real, RhoOfCentreVanishes) { EXPECT_TRUE(rho(g, LieElt::k(), 5).is_zero()); }

TEST_F(Real, Jplus) {
  VectorField j = jplus(g, E, 0, 4);
  VectorField want;
  want.add({E, 2}, Q(2) * X(H, 2));
  want.add({H, 2}, -X(F, 2));
  want.add({E, 3}, Q(2) * X(H, 3));
  want.add({H, 3}, -X(F, 3));
  EXPECT_EQ(j.coeffs, want.coeffs);
  EXPECT_TRUE(jplus(g, E, 3, 4).is_zero());
  for (const auto& [x, p] : jplus(g, H, 1, 5).coeffs) EXPECT_TRUE(ad().is_root(x.label));
}

TEST_F(Real, Rplus) {
  PolyFamily r = rplus(g, E, 0, 4);
  EXPECT_EQ(r.at({E, 1}), Q(2) * X(H, 1));
  EXPECT_EQ(r.at({E, 2}), Q(-2) * X(H, 1) * X(H, 1));
  for (const auto& [x, p] : rplus(g, H, 0, 6)) EXPECT_LE(x.n, 1) << genidx_str(ad(), x);
}

TEST_F(Real, RplusE8OnlyLowVariables) {
  PolyFamily r = rplus(g, E, 0, 9);
  const Poly& p = r.at({E, 8});
  int top = 0;
  for (const GenIdx& v : p.variables()) top = std::max(top, v.n);
  EXPECT_EQ(top, 4);
  VectorField full = rho(g, LieElt::j(E, 0), 9);
  EXPECT_EQ(full.at({E, 8}) - p, Q(2) * X(H, 8));
}

TEST_F(Real, Tau) {
  const StructureConstants& sc = g.sc();
  VectorField v;
  v.add({F, 2}, X(E, 1));
  VectorField t = tau(sc, v);
  VectorField want;
  want.add({E, -2}, X(F, -1));
  EXPECT_EQ(t.coeffs, want.coeffs);
  EXPECT_EQ(tau(sc, X(H, 1)), -X(H, -1));
  VectorField r = rho(g, LieElt::j(E, -1), 4);
  EXPECT_EQ(tau(sc, tau(sc, r)).coeffs, r.coeffs);
}

TEST_F(Real, UprhoCartanAndCentre) {
  DgElement h = uprho(g, LieElt::j(H, 0), 5);
  EXPECT_TRUE(h.vf.is_zero());
  EXPECT_FALSE(h.s.empty());
  EXPECT_EQ(h.s, s_image(g.sc(), LieElt::j(H, 0)));
  EXPECT_TRUE(uprho(g, LieElt::k(), 5).is_zero());
  for (int n = -1; n <= 1; ++n)
    if (n) EXPECT_FALSE(uprho(g, LieElt::j(H, n), 5).vf.is_zero());
  EXPECT_TRUE(r_polys(g, H, 0, 5).empty());
}

TEST_F(Real, UprhoEquivariance) {
  for (const char* tag : {"A1~", "A2~"}) {
    LoopAlgebra h(build_affine_data(tag));
    Realization R(h, 4);
    const AffineData& d = h.data();
    for (int a = 0; a < d.dim(); ++a)
      for (int n = -1; n <= 1; ++n) {
        LieElt A = LieElt::j(a, n);
        VectorField lhs = tau(h.sc(), R.uprho(A).vf);
        VectorField rhs = R.uprho(h.cartan_sigma(A)).vf;
        lhs -= rhs;
        lhs.prune();
        EXPECT_TRUE(lhs.is_zero()) << tag << " " << h.render(A) << ": " << render(d, lhs);
      }
  }
}

TEST_F(Real, ExampleRPolys) {
  PolyFamily r = r_polys(g, F, 1, 5);
  EXPECT_EQ(r.at({H, 1}), -X(E, 0));
  EXPECT_EQ(r.at({H, 0}), -X(E, -1));
  EXPECT_EQ(r.at({F, 1}), Poly(1) + Q(2) * X(H, 0));
}

TEST_F(Real, UprhoIsHomomorphismOnWindow) {
  Realization R(g, 5);
  std::vector<std::string> gens{"e0", "e1", "f0", "f1", "h1", "d", "E,1", "F,-1", "H,1", "H,-1"};
  for (const auto& a : gens)
    for (const auto& b : gens) {
      LieElt A = g.parse(a), B = g.parse(b);
      int na = 0, nb = 0;
      for (const auto& [k, c] : A.terms()) if (k.kind == LieKey::J) na = std::abs(k.idx.n);
      for (const auto& [k, c] : B.terms()) if (k.kind == LieKey::J) nb = std::abs(k.idx.n);
      DgElement lhs = dg_bracket(R.uprho(A), R.uprho(B));
      lhs -= R.uprho(g.bracket(A, B));
      EXPECT_TRUE(lhs.s.empty()) << a << " " << b;
      EXPECT_EQ(lhs.d, 0);
      for (const auto& [x, p] : lhs.vf.coeffs)
        if (std::abs(x.n) + std::max(na, nb) <= 4) EXPECT_TRUE(p.is_zero()) << a << " " << b << " " << genidx_str(ad(), x);
    }
}

TEST_F(Real, Stabilizes) {
  EXPECT_TRUE(check_stabilizes(g, LieElt::j(F, 1), 3));
  for (int i = 0; i <= 1; ++i) {
    EXPECT_TRUE(check_stabilizes(g, g.e(i), 4));
    EXPECT_TRUE(check_stabilizes(g, g.f(i), 4));
  }
  // the bare S image of J_{E,1} realized by iota, without the rho terms, mixes plus and minus variables
  DgElement naive;
  for (const auto& [s, c] : s_image(g.sc(), LieElt::j(E, 1))) naive.vf.add_scaled_field(iota_s(s, 4), c);
  std::mt19937_64 rng(1);
  EXPECT_FALSE(check_stabilizes(g, naive, 3, 10, rng).ok);
}

TEST_F(Real, GapViolationsStabilize) {
  // the measured B(K) of the R-polynomials does not grow with the window
  for (int K : {1, 2}) {
    GapReport a = widening_gap_audit(r_polys(g, E, 0, 7), K);
    GapReport b = widening_gap_audit(r_polys(g, E, 0, 9), K);
    EXPECT_EQ(a.max_violating_grade, b.max_violating_grade) << K;
    EXPECT_GE(a.max_violating_grade, 0);
  }
}

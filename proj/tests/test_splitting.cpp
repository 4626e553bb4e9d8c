#include <gtest/gtest.h>

#include "kmr/splitting.hpp"

using namespace kmr;

namespace {

struct Sl2Fixture {
  Sl2Fixture() : g(build_affine_data("A1~")), sp(g, 5, 2), phi(sp.solve_phi().phi) {}
  LoopAlgebra g;
  Splitting sp;
  PhiMap phi;
};

const Sl2Fixture& sl2() {
  static Sl2Fixture f;
  return f;
}

}  // namespace

class SplitSl2 : public ::testing::Test {
 protected:
  SplitSl2() : f(sl2()), ad(f.g.data()), E(ad.label_of("E")), H(ad.label_of("H")), F(ad.label_of("F")) {}
  Poly X(int a, int n) const { return Poly::var({a, n}); }
  OneForm dX(int a, int n, const Poly& c = Poly(1)) const {
    OneForm w;
    w.add({a, n}, c);
    return w;
  }
  OneForm phi(int a, int n) const {
    auto it = f.phi.find({a, n});
    OneForm w = it == f.phi.end() ? OneForm() : it->second;
    w.prune();
    return w;
  }
  const Sl2Fixture& f;
  const AffineData& ad;
  int E, H, F;
};

TEST_F(SplitSl2, LowGradePhi) {
  EXPECT_EQ(phi(F, 0).coeffs, dX(E, 0, Poly(-2)).coeffs);
  EXPECT_EQ(phi(E, -1).coeffs, dX(F, 1, Poly(-4)).coeffs);
  OneForm h = dX(H, 1, Poly(-12));
  h.add({E, 0}, Q(-4) * X(F, 1));
  EXPECT_EQ(phi(H, -1).coeffs, h.coeffs);
  OneForm fm = dX(E, 1, Poly(-8));
  fm.add({E, 0}, Q(4) * X(H, 1));
  EXPECT_EQ(phi(F, -1).coeffs, fm.coeffs);
  OneForm e2 = dX(F, 2, Poly(-10));
  e2.add({F, 1}, Q(-8) * X(H, 1));
  e2.add({E, 0}, Q(2) * X(F, 1) * X(F, 1));
  EXPECT_EQ(phi(E, -2).coeffs, e2.coeffs);
}

TEST_F(SplitSl2, PhiVanishesOnCartanAndPlus) {
  PhiMap minus;
  for (const auto& [x, w] : f.phi) {
    if (ad.in_minus(x)) minus.emplace(x, w);
    else if (x.n == 0 && !ad.is_root(x.label)) EXPECT_TRUE(w.is_zero()) << genidx_str(ad, x);
  }
  // the plus entries are tau of the minus ones
  PhiMap full = f.sp.extend_phi(minus);
  for (const auto& [x, w] : f.phi) {
    OneForm d = w;
    if (auto it = full.find(x); it != full.end()) d -= it->second;
    d.prune();
    EXPECT_TRUE(d.is_zero()) << genidx_str(ad, x);
  }
}

TEST_F(SplitSl2, SolveIsUniqueWithoutGauge) {
  SolveReport a = f.sp.solve_phi(Gauge::None);
  EXPECT_TRUE(a.free.empty());
  for (const auto& [x, w] : a.phi) {
    OneForm d = w;
    auto it = f.phi.find(x);
    if (it != f.phi.end()) d -= it->second;
    d.prune();
    EXPECT_TRUE(d.is_zero()) << genidx_str(ad, x);
  }
}

TEST_F(SplitSl2, HomomorphismOnWindow) {
  SplittingReport r = f.sp.verify(f.phi);
  EXPECT_GT(r.pairs_checked, 100);
  EXPECT_TRUE(r.ok()) << r.failures.size();
}

TEST_F(SplitSl2, ZeroPhiFailsFirstProducts) {
  SplittingReport r = f.sp.verify({});
  ASSERT_FALSE(r.ok());
  bool first = false;
  for (const PairResidual& p : r.failures) first = first || !p.first.is_zero();
  EXPECT_TRUE(first);
}

TEST_F(SplitSl2, CentreAndCartan) {
  EXPECT_TRUE(f.sp.theta(LieKey::k(), f.phi).is_zero());
  D1State d = f.sp.theta(LieKey::d(), f.phi);
  EXPECT_EQ(d.d, 1);
  for (int i = 0; i <= ad.rank; ++i) {
    D1State h = f.sp.theta(f.g.coroot(i), f.phi);
    EXPECT_EQ(h, D1State::from_dg(f.sp.uprho(f.g.coroot(i))));
  }
}

TEST_F(SplitSl2, ChevalleySerreImages) {
  CReport cr = c_coefficients(f.g, 4);
  for (int i = 0; i <= ad.rank; ++i) {
    D1State t = f.sp.theta(f.g.e(i), f.phi);
    D1State want = D1State::from_dg(f.sp.uprho(f.g.e(i)));
    want.gamma.add(ad.f_index(i), Poly(cr.extracted.at(i)));
    EXPECT_EQ(t, want) << i;
  }
  EXPECT_EQ(cr.extracted.at(0), -4);
  EXPECT_EQ(cr.extracted.at(1), -2);
  EXPECT_TRUE(cr.ok());
}

TEST_F(SplitSl2, LiftToFreeBosons) {
  SplittingReport stated = f.sp.verify_w(f.phi, LiftVariant::Stated);
  EXPECT_FALSE(stated.ok());
  SolveReport bl = f.sp.solve_blift(f.phi);
  EXPECT_TRUE(bl.free.empty());
  SplittingReport corrected = f.sp.verify_w(f.phi, LiftVariant::Corrected, &bl);
  EXPECT_TRUE(corrected.ok()) << corrected.failures.size();

  for (LieKey key : {LieKey::j(H, 0), LieKey::d()}) {
    D1State diff = f.sp.w_image(key, f.phi, bl.blift, LiftVariant::Corrected) - f.sp.theta(key, f.phi);
    diff.prune();
    std::map<int, Poly> want;
    for (const auto& [j, c] : b_coords(f.g, LieElt(key))) want[j] = Poly(c);
    EXPECT_EQ(diff.b, want);
    diff.b.clear();
    EXPECT_TRUE(diff.is_zero());
  }
  // w(k) no longer vanishes
  EXPECT_FALSE(f.sp.w_image(LieKey::k(), f.phi, bl.blift, LiftVariant::Corrected).is_zero());
}

TEST_F(SplitSl2, BCoordinates) {
  std::map<int, Q> k = b_coords(f.g, LieElt::k());
  std::map<int, Q> d = b_coords(f.g, LieElt::d());
  EXPECT_EQ(k, (std::map<int, Q>{{ad.rank, 1}}));
  EXPECT_EQ(d, (std::map<int, Q>{{ad.rank + 1, 1}}));
}

TEST_F(SplitSl2, ZeroModeProducts) {
  int checked = 0;
  for (const LieKey& x : f.sp.generators())
    for (const LieKey& y : f.sp.generators()) {
      if (!f.sp.safe_pair(x, y)) continue;
      ++checked;
      PairResidual r = f.sp.vartheta_check(x, y, f.phi);
      EXPECT_TRUE(r.zero.is_zero()) << f.g.render(LieElt(x)) << " " << f.g.render(LieElt(y));
    }
  EXPECT_GT(checked, 0);
  D1State v = vartheta_state(f.sp.realization(), f.phi, LieElt::k());
  EXPECT_TRUE(v.is_zero());
}

TEST_F(SplitSl2, PlusAndMinusStabilized) {
  std::mt19937_64 rng(7);
  for (const LieKey& x : f.sp.generators()) {
    if (x.kind != LieKey::J || std::abs(x.idx.n) > 1) continue;
    for (Side s : {Side::Plus, Side::Minus}) {
      StabilityReport r = f.sp.lpg_stabilize(x, f.phi, s, 10, rng);
      EXPECT_TRUE(r.ok()) << f.g.render(LieElt(x)) << (r.ok() ? "" : " " + r.escapes[0]);
      EXPECT_EQ(r.samples, 10);
    }
  }
}

TEST_F(SplitSl2, SafePairs) {
  EXPECT_TRUE(f.sp.safe_pair(LieKey::j(E, 1), LieKey::j(F, 1)));
  EXPECT_FALSE(f.sp.safe_pair(LieKey::j(E, 2), LieKey::j(F, 1)));
  EXPECT_TRUE(f.sp.safe_pair(LieKey::k(), LieKey::j(F, 2)));
}

TEST(SplitA2, ChevalleySerreCoefficients) {
  LoopAlgebra g(build_affine_data("A2~"));
  CReport cr = c_coefficients(g, 4);
  // frozen extraction; the closed formula gives -4, -2, -3
  EXPECT_EQ(cr.extracted, (std::map<int, Q>{{0, -6}, {1, -2}, {2, -3}}));
  EXPECT_EQ(cr.formula, (std::map<int, Q>{{0, -4}, {1, -2}, {2, -3}}));
  EXPECT_FALSE(cr.ok());
  // the unconstrained solve picks the extracted values
  Splitting sp(g, 4, 1);
  SolveReport sr = sp.solve_phi(Gauge::None);
  EXPECT_TRUE(sr.free.empty());
  const AffineData& ad = g.data();
  for (int i = 0; i <= ad.rank; ++i) {
    OneForm w = sr.phi.at(ad.f_index(i));
    w.prune();
    OneForm want;
    want.add(ad.e_index(i), Poly(cr.extracted.at(i)));
    EXPECT_EQ(w.coeffs, want.coeffs) << i;
  }
}

TEST(SplitFormula, ClosedForm) {
  EXPECT_EQ(c_formula(build_affine_data("A1~")), (std::map<int, Q>{{0, -4}, {1, -2}}));
  EXPECT_EQ(c_formula(build_affine_data("A3~")), (std::map<int, Q>{{0, -4}, {1, -2}, {2, -3}, {3, -3}}));
}

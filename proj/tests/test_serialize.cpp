#include <gtest/gtest.h>

#include "kmr/serialize.hpp"

using namespace kmr;

class Serialize : public ::testing::Test {
 protected:
  Serialize() : g(build_affine_data("A1~")), ad(g.data()), E(ad.label_of("E")), H(ad.label_of("H")), F(ad.label_of("F")) {}
  Poly X(int a, int n) const { return Poly::var({a, n}); }
  // through text, as the CLI does
  static Json reparse(const Json& j) { return Json::parse(j.dump()); }
  LoopAlgebra g;
  const AffineData& ad;
  int E, H, F;
};

TEST_F(Serialize, Poly) {
  Poly p = Q(-2, 315) * X(H, 1) * X(H, 1) * X(H, 1) + Q(8, 45) * X(F, 1) * X(E, -2) + Q(3);
  EXPECT_EQ(poly_from_json(ad, reparse(to_json(ad, p))), p);
  EXPECT_TRUE(poly_from_json(ad, reparse(to_json(ad, Poly()))).is_zero());
}

TEST_F(Serialize, Forms) {
  OneForm w;
  w.add({F, 2}, Poly(-10));
  w.add({F, 1}, Q(-8) * X(H, 1));
  w.add({E, 0}, Q(2) * X(F, 1) * X(F, 1));
  EXPECT_EQ(form_from_json(ad, reparse(to_json(ad, w))).coeffs, w.coeffs);
}

TEST_F(Serialize, Fields) {
  VectorField v = rho(g, LieElt::j(E, -1), 3);
  EXPECT_EQ(field_from_json(ad, reparse(to_json(ad, v))).coeffs, v.coeffs);
}

TEST_F(Serialize, States) {
  VAState s = VAState::of({Sym::gamma({E, 0}, 0), Sym::beta({F, 1}, -1)}, ZPoly(Q(3, 2)));
  s += VAState::of({Sym::s(E, H, 1, -1)}, ZPoly(-2));
  s += VAState::of({Sym::d(-1)});
  s += VAState::of({Sym::bfield(1, -1)});
  s += VAState::of({}, ZPoly::monomial(3, 4));
  EXPECT_EQ(state_from_json(ad, reparse(to_json(ad, s))), s);
}

TEST_F(Serialize, Depth1State) {
  Splitting sp(g, 4, 1);
  PhiMap phi = sp.solve_phi().phi;
  D1State t = sp.theta(LieKey::j(F, 1), phi);
  EXPECT_EQ(state_from_json(ad, reparse(to_json(ad, t))), t.to_state());
}

TEST_F(Serialize, Reports) {
  CReport cr = c_coefficients(g, 4);
  Json j = reparse(to_json(ad, cr));
  EXPECT_TRUE(j.is_object());
  EXPECT_FALSE(j.dump().empty());
  Splitting sp(g, 4, 1);
  SolveReport sr = sp.solve_phi();
  Json s = reparse(to_json(g, sr));
  EXPECT_TRUE(s.is_object());
  SplittingReport vr = sp.verify(sr.phi);
  Json v = reparse(to_json(g, vr));
  EXPECT_TRUE(v.is_object());
}

TEST_F(Serialize, RejectsMalformed) {
  EXPECT_ANY_THROW(poly_from_json(ad, Json::parse(R"([{"coeff": "1", "factors": [{"kind": "X", "label": "Q", "n": 0, "exp": 1}]}])")));
}

#include <gtest/gtest.h>

#include <random>

#include "kmr/loopalg.hpp"

using namespace kmr;

namespace {

LieElt random_elt(const LoopAlgebra& g, std::mt19937& rng, int grade) {
  std::uniform_int_distribution<int> lab(0, g.data().dim() - 1), n(-grade, grade), c(-3, 3), coin(0, 5);
  LieElt x;
  for (int t = 0; t < 3; ++t) x.add(LieKey::j(lab(rng), n(rng)), Q(c(rng)));
  if (coin(rng) == 0) x.add(LieKey::k(), Q(c(rng)));
  if (coin(rng) == 0) x.add(LieKey::d(), Q(c(rng)));
  return x;
}

}  // namespace

class Sl2 : public ::testing::Test {
 protected:
  Sl2() : g(build_affine_data("A1~")), E(g.data().label_of("E")), H(g.data().label_of("H")), F(g.data().label_of("F")) {}
  LoopAlgebra g;
  int E, H, F;
};

TEST_F(Sl2, Brackets) {
  EXPECT_EQ(g.bracket(LieElt::j(E, 0), LieElt::j(F, 0)), LieElt::j(H, 0));
  EXPECT_EQ(g.bracket(LieElt::j(E, 1), LieElt::j(F, -1)), LieElt::j(H, 0) + LieElt::k());
  EXPECT_TRUE(g.bracket(LieElt::k(), LieElt::j(E, 3)).is_zero());
  EXPECT_EQ(g.bracket(LieElt::d(), LieElt::j(F, 2)), Q(2) * LieElt::j(F, 2));
  EXPECT_EQ(g.bracket(LieElt::j(H, 1), LieElt::j(E, 0)), Q(2) * LieElt::j(E, 1));
}

TEST_F(Sl2, Sigma) {
  EXPECT_EQ(g.cartan_sigma(LieElt::j(E, 0)), LieElt::j(F, 0));
  EXPECT_EQ(g.cartan_sigma(LieElt::j(H, 1)), -LieElt::j(H, -1));
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    LieElt x = random_elt(g, rng, 3);
    EXPECT_EQ(g.cartan_sigma(g.cartan_sigma(x)), x);
  }
}

TEST_F(Sl2, Form) {
  EXPECT_EQ(g.bilinear_form(LieElt::j(E, 2), LieElt::j(F, -2)), 1);
  EXPECT_EQ(g.bilinear_form(LieElt::k(), LieElt::d()), 1);
  EXPECT_EQ(g.bilinear_form(LieElt::k(), LieElt::k()), 0);
  EXPECT_EQ(g.bilinear_form(LieElt::j(H, 1), LieElt::j(H, -1)), 2);
}

TEST_F(Sl2, ChevalleySerre) {
  EXPECT_EQ(g.e(0), LieElt::j(F, 1));
  EXPECT_EQ(g.f(0), LieElt::j(E, -1));
  EXPECT_EQ(g.e(1), LieElt::j(E, 0));
  EXPECT_EQ(g.parse("h0"), g.coroot(0));
  EXPECT_EQ(g.parse("E,-2"), LieElt::j(E, -2));
  EXPECT_EQ(g.parse("J(H,1)"), LieElt::j(H, 1));
  EXPECT_THROW(g.parse("x7"), AlgebraError);
}

TEST_F(Sl2, WeightOfElement) {
  EXPECT_EQ(g.weight(LieElt::j(F, 1)), (AffWeight{{-1}, 1}));
  EXPECT_THROW(g.weight(LieElt::j(F, 1) + LieElt::j(E, 0)), AlgebraError);
}

class AllTypes : public ::testing::TestWithParam<const char*> {};

TEST_P(AllTypes, ChevalleyRelations) {
  LoopAlgebra g(build_affine_data(GetParam()));
  const AffineData& ad = g.data();
  const int n = ad.rank + 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LieElt ef = g.bracket(g.e(i), g.f(j));
      if (i == j) EXPECT_EQ(ef, g.coroot(i));
      else EXPECT_TRUE(ef.is_zero());
      EXPECT_EQ(g.bracket(g.coroot(i), g.e(j)), Q(ad.cartan[i][j]) * g.e(j));
      EXPECT_EQ(g.bracket(g.coroot(i), g.f(j)), Q(-ad.cartan[i][j]) * g.f(j));
      if (i != j) {
        EXPECT_TRUE(ad_power(g, g.e(i), g.e(j), 1 - ad.cartan[i][j]).is_zero()) << i << " " << j;
        EXPECT_TRUE(ad_power(g, g.f(i), g.f(j), 1 - ad.cartan[i][j]).is_zero()) << i << " " << j;
        EXPECT_FALSE(ad_power(g, g.e(i), g.e(j), -ad.cartan[i][j]).is_zero()) << i << " " << j;
      }
    }
  // k = sum of comarks times coroots
  LieElt k;
  for (int i = 0; i < n; ++i) k += Q(ad.comarks[i]) * g.coroot(i);
  EXPECT_EQ(k, LieElt::k());
}

TEST_P(AllTypes, JacobiAndInvariance) {
  LoopAlgebra g(build_affine_data(GetParam()));
  std::mt19937 rng(11);
  for (int t = 0; t < 60; ++t) {
    LieElt x = random_elt(g, rng, 2), y = random_elt(g, rng, 2), z = random_elt(g, rng, 2);
    LieElt jac = g.bracket(x, g.bracket(y, z)) + g.bracket(y, g.bracket(z, x)) + g.bracket(z, g.bracket(x, y));
    EXPECT_TRUE(jac.is_zero()) << g.render(jac);
    EXPECT_EQ(g.bracket(x, y), -g.bracket(y, x));
    EXPECT_EQ(g.bilinear_form(g.bracket(x, y), z), g.bilinear_form(x, g.bracket(y, z)));
    EXPECT_EQ(g.bilinear_form(x, y), g.bilinear_form(y, x));
    // sigma is an automorphism
    EXPECT_EQ(g.cartan_sigma(g.bracket(x, y)), g.bracket(g.cartan_sigma(x), g.cartan_sigma(y)));
  }
}

TEST_P(AllTypes, SigmaSign) {
  LoopAlgebra g(build_affine_data(GetParam()));
  const AffineData& ad = g.data();
  for (int a = 0; a < ad.dim(); ++a)
    for (int n = -2; n <= 2; ++n) {
      GenIdx x{a, n};
      LieElt s = g.cartan_sigma(LieElt::j(a, n));
      EXPECT_EQ(s, Q(g.sc().sigma_sign(x)) * LieElt::j(ad.mirror(x).label, -n));
    }
}

INSTANTIATE_TEST_SUITE_P(Types, AllTypes, ::testing::Values("A1~", "A2~", "A3~", "D4~", "E6~"));

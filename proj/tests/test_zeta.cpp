#include <gtest/gtest.h>

#include <random>

#include "kmr/zeta.hpp"

using namespace kmr;

namespace {

std::vector<Q> ints(std::initializer_list<int> v) {
  std::vector<Q> r;
  for (int x : v) r.emplace_back(x);
  return r;
}

Q frac(int a, int b) {
  Q q(a, b);
  q.canonicalize();
  return q;
}

RationalSeries prefix(const std::function<Q(int)>& f, int n) {
  RationalSeries s;
  for (int i = 0; i < n; ++i) s.coeffs.push_back(f(i));
  return s;
}

// Bernoulli-polynomial oracle: e^{ay}/(1-e^{by}) has constant term 1/2 - a/b
Q oracle_over_one_minus(const std::vector<Q>& num, int b) {
  Q r = 0;
  for (int a = 0; a < static_cast<int>(num.size()); ++a) r += num[a] * (Q(1, 2) - frac(a, b));
  return r;
}

struct Sl2Phi {
  Sl2Phi() : g(build_affine_data("A1~")), phi(Splitting(g, 6, 2).solve_phi().phi) {}
  LoopAlgebra g;
  PhiMap phi;
};

const Sl2Phi& sl2() {
  static Sl2Phi s;
  return s;
}

}  // namespace

TEST(Zeta, GeometricReconstruction) {
  RationalSeries s = reconstruct_rational(prefix([](int i) { return i % 2 == 0 ? Q(-4) : Q(0); }, 12));
  ASSERT_TRUE(s.reconstructed);
  EXPECT_EQ(s.reconstructed->num, ints({-4}));
  EXPECT_EQ(s.reconstructed->den, ints({1, 0, -1}));
  EXPECT_GT(s.certificate, 0);
}

TEST(Zeta, ShiftedTailReconstruction) {
  auto f = [](int i) { return i == 2 ? Q(-10) : (i >= 6 && i % 2 == 0 ? Q(-4) : Q(0)); };
  RationalSeries s = reconstruct_rational(prefix(f, 20));
  ASSERT_TRUE(s.reconstructed);
  EXPECT_EQ(s.reconstructed->num, ints({0, 0, -10, 0, 10, 0, -4}));
  EXPECT_EQ(s.reconstructed->den, ints({1, 0, -1}));
  std::vector<Q> back = s.reconstructed->expand(20);
  EXPECT_EQ(back, s.coeffs);
}

TEST(Zeta, ConstantSeries) {
  RationalSeries s = reconstruct_rational(prefix([](int i) { return i == 0 ? Q(7, 3) : Q(0); }, 8));
  ASSERT_TRUE(s.reconstructed);
  EXPECT_EQ(s.reconstructed->num, std::vector<Q>{Q(7, 3)});
  EXPECT_EQ(s.reconstructed->den, ints({1}));
  EXPECT_EQ(zeta_constant_term(*s.reconstructed), Q(7, 3));
}

TEST(Zeta, NoFit) {
  // 1/(1 - z^5) needs a degree-5 denominator
  auto f = [](int i) { return i % 5 == 0 ? Q(1) : Q(0); };
  EXPECT_THROW(reconstruct_rational(prefix(f, 12), 2, 2), ZetaError);
}

TEST(Zeta, WorkedConstants) {
  RationalFunction a{ints({0, 0, -10, 0, 10, 0, -4}), ints({1, 0, -1})};
  EXPECT_EQ(zeta_constant_term(a), 0);
  RationalFunction tail{ints({0, 0, 0, 0, 0, 0, 1}), ints({1, 0, -1})};
  EXPECT_EQ(zeta_constant_term(tail), Q(-5, 2));
  EXPECT_EQ(Q(-10) - Q(4) * zeta_constant_term(tail), 0);
  RationalFunction five{ints({0, 0, 0, 0, 0, 1}), ints({1, 0, -1})};
  EXPECT_EQ(zeta_constant_term(five), -2);
  EXPECT_EQ(zeta_constant_term(RationalFunction{ints({3}), ints({1})}), 3);
}

TEST(Zeta, BernoulliOracle) {
  std::mt19937 rng(3);
  for (int t = 0; t < 40; ++t) {
    int b = static_cast<int>(rng() % 3) + 1;
    std::vector<Q> num;
    for (int i = 0; i < static_cast<int>(rng() % 7) + 1; ++i) num.push_back(frac(static_cast<int>(rng() % 11) - 5, static_cast<int>(rng() % 3) + 1));
    std::vector<Q> den(b + 1, Q(0));
    den[0] = 1;
    den[b] = -1;
    EXPECT_EQ(zeta_constant_term(RationalFunction{num, den}), oracle_over_one_minus(num, b)) << t;
  }
}

TEST(Zeta, LinearAndAdditive) {
  RationalFunction p{ints({0, 1, 2}), ints({1, 0, -1})};
  RationalFunction q{ints({1, 0, 0, -3}), ints({1, 0, -1})};
  RationalFunction s{ints({1, 1, 2, -3}), ints({1, 0, -1})};
  EXPECT_EQ(zeta_constant_term(s), zeta_constant_term(p) + zeta_constant_term(q));
  RationalFunction p3{ints({0, 3, 6}), ints({1, 0, -1})};
  EXPECT_EQ(zeta_constant_term(p3), Q(3) * zeta_constant_term(p));
  // common denominator with a different presentation: 1/(1-z) = (1+z)/(1-z^2)
  RationalFunction u{ints({1}), ints({1, -1})}, v{ints({1, 1}), ints({1, 0, -1})};
  EXPECT_EQ(zeta_constant_term(u), zeta_constant_term(v));
}

TEST(Zeta, PoleOrderBound) {
  std::vector<Q> den{Q(1)};
  // (1 - z)^20
  for (int i = 0; i < 20; ++i) {
    std::vector<Q> next(den.size() + 1, Q(0));
    for (size_t j = 0; j < den.size(); ++j) {
      next[j] += den[j];
      next[j + 1] -= den[j];
    }
    den = next;
  }
  EXPECT_THROW(zeta_constant_term(RationalFunction{ints({1}), den}, 16), ZetaError);
}

TEST(Zeta, RegulatedSeriesSl2) {
  const Sl2Phi& s = sl2();
  const LoopAlgebra& g = s.g;
  int E = g.data().label_of("E"), H = g.data().label_of("H"), F = g.data().label_of("F");
  auto coeffs = [&](int a, int n, int b, int m) {
    return regulated_first_product(g, s.phi, LieElt::j(a, n), LieElt::j(b, m), 12).coeffs;
  };
  std::vector<Q> eb = coeffs(E, 1, F, -1);
  ASSERT_GE(eb.size(), 12u);
  for (int i = 0; i < 12; ++i) EXPECT_EQ(eb[i], i == 1 ? Q(-8) : (i >= 5 && i % 2 ? Q(-4) : Q(0))) << i;
  std::vector<Q> hh = coeffs(H, 1, H, -1);
  for (int i = 0; i < 12; ++i) EXPECT_EQ(hh[i], i == 1 ? Q(-12) : i == 3 ? Q(-4) : (i >= 5 && i % 2 ? Q(-8) : Q(0))) << i;
  std::vector<Q> ef = coeffs(E, -2, F, 2);
  for (int i = 0; i < 12; ++i) EXPECT_EQ(ef[i], i == 2 ? Q(-10) : (i >= 6 && i % 2 == 0 ? Q(-4) : Q(0))) << i;
  // frozen: every F-pairing contributes as well, so the Cartan series carries -8 past the constant
  std::vector<Q> h0 = coeffs(H, 0, H, 0);
  for (int i = 0; i < 12; ++i) EXPECT_EQ(h0[i], i == 0 ? Q(-4) : (i % 2 == 0 ? Q(-8) : Q(0))) << i;
}

TEST(Zeta, RowsHaveZeroConstants) {
  const Sl2Phi& s = sl2();
  std::vector<std::pair<LieElt, LieElt>> pairs = default_zeta_pairs(s.g);
  ASSERT_EQ(pairs.size(), 4u);
  for (const auto& [x, y] : pairs) {
    ZetaRow r = zeta_row(s.g, s.phi, x, y, 12);
    ASSERT_TRUE(r.series.reconstructed);
    EXPECT_EQ(r.series.reconstructed->expand(static_cast<int>(r.series.coeffs.size())), r.series.coeffs);
    EXPECT_EQ(r.constant, 0) << s.g.render(x) << " " << s.g.render(y);
  }
}

TEST(Zeta, RegulatorNeedsFreeFields) {
  D1State a;
  a.d = 1;
  EXPECT_THROW(first_product_regulated(a, a), DivergenceError);
}

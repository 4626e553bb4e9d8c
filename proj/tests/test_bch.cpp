#include <gtest/gtest.h>

#include "kmr/bch.hpp"

using namespace kmr;

class Bch : public ::testing::Test {
 protected:
  Bch() : g(build_affine_data("A1~")), E(g.data().label_of("E")), H(g.data().label_of("H")), F(g.data().label_of("F")) {}
  Poly X(int a, int n) const { return Poly::var({a, n}); }
  LoopAlgebra g;
  int E, H, F;
};

TEST_F(Bch, PiTruncate) {
  GroupWord w;
  w.truncation_k = 3;
  w.set({E, 0}, X(E, 0));
  w.set({H, 1}, X(H, 1));
  GroupWord p = pi_truncate(w, 1);
  EXPECT_EQ(p.factors.size(), 1u);
  EXPECT_TRUE(p.factors.count({E, 0}));
  GroupWord q = pi_truncate(pi_truncate(w, 2), 2);
  EXPECT_EQ(q.factors.size(), pi_truncate(w, 2).factors.size());
  GroupWord s = generic_word(g.data(), 6);
  for (const auto& [x, c] : pi_truncate(s, 3).factors) EXPECT_LT(x.n, 3);
  EXPECT_THROW(pi_truncate(w, 4), TruncationError);
}

TEST_F(Bch, PushLeftSl2) {
  // exp(x E) exp(eps F): the E exponent becomes x - eps x^2
  FlowEngine e(g);
  GroupWord w;
  w.truncation_k = 1;
  w.set({E, 0}, X(E, 0));
  GroupWord r = e.push_left(w, LieElt::j(F, 0), NilCoeff::Eps);
  NilCoeff c = r.exponent({E, 0});
  EXPECT_EQ(c.part[NilCoeff::One], X(E, 0));
  EXPECT_EQ(c.part[NilCoeff::Eps], -(X(E, 0) * X(E, 0)));
  // the Cartan part escapes to the coset
  ASSERT_TRUE(r.coset.count(LieKey::j(H, 0)));
  EXPECT_EQ(r.coset.at(LieKey::j(H, 0)).part[NilCoeff::Eps], X(E, 0));
}

TEST_F(Bch, PushLeftSameDirection) {
  FlowEngine e(g);
  GroupWord w;
  w.truncation_k = 1;
  w.set({E, 0}, X(E, 0));
  GroupWord r = e.push_left(w, LieElt::j(E, 0), NilCoeff::Eps);
  NilCoeff want(X(E, 0));
  want.part[NilCoeff::Eps] = Poly(1);
  EXPECT_EQ(r.exponent({E, 0}), want);
}

TEST_F(Bch, PushLeftCommutesToFirstOrder) {
  FlowEngine e(g);
  GroupWord w = generic_word(g.data(), 4);
  LieElt A = LieElt::j(F, 1), B = LieElt::j(H, 0) + LieElt::j(E, 1);
  GroupWord ab = e.push_left(e.push_left(w, A, NilCoeff::Eps), B, NilCoeff::Eps);
  GroupWord ba = e.push_left(e.push_left(w, B, NilCoeff::Eps), A, NilCoeff::Eps);
  EXPECT_EQ(ab.factors, ba.factors);
}

TEST_F(Bch, PushLeftRejectsShallowWord) {
  FlowEngine e(g);
  GroupWord w;
  w.truncation_k = 1;
  EXPECT_THROW(e.push_left(w, LieElt::j(E, -1), NilCoeff::Eps), TruncationError);
}

TEST_F(Bch, CoordinateFlowExamples) {
  PolyFamily p = coordinate_flow(g, LieElt::j(E, 0), 2);
  EXPECT_EQ(p.at({E, 0}), Poly(1));
  EXPECT_EQ(p.at({E, 1}), Q(2) * X(H, 1));
  EXPECT_EQ(p.at({H, 1}), -X(F, 1));
  EXPECT_FALSE(p.count({F, 1}));

  PolyFamily q = coordinate_flow(g, LieElt::j(F, 1), 3);
  EXPECT_EQ(q.at({F, 1}), Poly(1));
  EXPECT_EQ(q.at({H, 2}), X(E, 1));
  EXPECT_EQ(q.at({F, 2}), Q(-2) * X(H, 1));

  EXPECT_TRUE(coordinate_flow(g, LieElt::k(), 5).empty());
}

TEST_F(Bch, DegreeCapDropsHigherTerms) {
  PolyFamily full = coordinate_flow(g, LieElt::j(E, -1), 4);
  PolyFamily cap = coordinate_flow(g, LieElt::j(E, -1), 4, 1);
  for (const auto& [x, p] : cap) EXPECT_LE(p.degree(), 1);
  for (const auto& [x, p] : full) {
    Poly lin = p.truncate_degree(1);
    EXPECT_EQ(cap.count(x) ? cap.at(x) : Poly(), lin) << genidx_str(g.data(), x);
  }
}

TEST_F(Bch, FlowIsLinear) {
  LieElt A = LieElt::j(E, 0), B = LieElt::j(F, 1);
  PolyFamily a = coordinate_flow(g, A, 4), b = coordinate_flow(g, B, 4), ab = coordinate_flow(g, Q(2) * A - B, 4);
  for (const auto& [x, p] : ab) {
    Poly want = Q(2) * (a.count(x) ? a.at(x) : Poly()) - (b.count(x) ? b.at(x) : Poly());
    EXPECT_EQ(p, want);
  }
}

TEST_F(Bch, GradeBookkeeping) {
  // every monomial of P^{b,m}_A has grade wgt(A) - wgt(b,m)
  for (const char* tag : {"A1~", "A2~"}) {
    LoopAlgebra h(build_affine_data(tag));
    const AffineData& ad = h.data();
    for (int i = 0; i <= ad.rank; ++i)
      for (const LieElt& A : {h.e(i), h.f(i)}) {
        AffWeight wa = h.weight(A);
        for (const auto& [x, p] : coordinate_flow(h, A, 3)) {
          AffWeight wx = ad.wgt(x);
          AffWeight want{RootVec(ad.rank), wa.delta - wx.delta};
          for (int r = 0; r < ad.rank; ++r) want.fin[r] = wa.fin[r] - wx.fin[r];
          for (const auto& [m, c] : p.terms()) {
            EXPECT_EQ(monomial_grade(ad, m), want) << tag << " " << genidx_str(ad, x);
          }
        }
      }
  }
}

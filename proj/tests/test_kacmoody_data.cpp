#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "kmr/kacmoody_data.hpp"

using namespace kmr;

namespace {

// positive roots of a simply-laced finite type by closure: beta + alpha_i is a root iff (beta, alpha_i) = -1
std::set<RootVec> closure_roots(const IntMatrix& fin) {
  const int l = static_cast<int>(fin.size());
  std::set<RootVec> roots, frontier;
  for (int i = 0; i < l; ++i) {
    RootVec r(l, 0);
    r[i] = 1;
    frontier.insert(r);
  }
  while (!frontier.empty()) {
    roots.insert(frontier.begin(), frontier.end());
    std::set<RootVec> next;
    for (const RootVec& b : frontier)
      for (int i = 0; i < l; ++i) {
        int ip = 0;
        for (int j = 0; j < l; ++j) ip += b[j] * fin[j][i];
        if (ip != -1) continue;
        RootVec c = b;
        c[i] += 1;
        if (!roots.count(c)) next.insert(c);
      }
    frontier = std::move(next);
  }
  return roots;
}

IntMatrix finite_part(const AffineData& ad) {
  IntMatrix m(ad.rank, std::vector<int>(ad.rank));
  for (int i = 0; i < ad.rank; ++i)
    for (int j = 0; j < ad.rank; ++j) m[i][j] = ad.cartan[i + 1][j + 1];
  return m;
}

}  // namespace

TEST(AffineData, A1) {
  AffineData ad = build_affine_data("A1~");
  EXPECT_EQ(ad.cartan, (IntMatrix{{2, -2}, {-2, 2}}));
  EXPECT_EQ(ad.marks, (std::vector<int>{1, 1}));
  EXPECT_EQ(ad.comarks, (std::vector<int>{1, 1}));
  EXPECT_EQ(ad.dual_coxeter, 2);
  EXPECT_EQ(ad.coxeter, 2);
}

TEST(AffineData, AffineSuffixAccepted) {
  EXPECT_EQ(build_affine_data("A1affine").cartan, build_affine_data("A1~").cartan);
}

TEST(AffineData, A2) {
  AffineData ad = build_affine_data("A2~");
  EXPECT_EQ(ad.coxeter, 3);
  EXPECT_EQ(ad.theta, (RootVec{1, 1}));
  std::set<RootVec> oracle = closure_roots(finite_part(ad));
  EXPECT_EQ(std::set<RootVec>(ad.positive_roots.begin(), ad.positive_roots.end()), oracle);
}

TEST(AffineData, InvariantsAcrossTypes) {
  for (const char* tag : {"A1~", "A2~", "A3~", "A4~", "D4~", "D5~", "E6~"}) {
    AffineData ad = build_affine_data(tag);
    const int n = ad.rank + 1;
    for (int i = 0; i < n; ++i) {
      int row = 0, col = 0;
      for (int j = 0; j < n; ++j) {
        row += ad.cartan[i][j] * ad.marks[j];
        col += ad.comarks[j] * ad.cartan[j][i];
      }
      EXPECT_EQ(row, 0) << tag;
      EXPECT_EQ(col, 0) << tag;
    }
    EXPECT_EQ(ad.marks[0], 1) << tag;
    EXPECT_EQ(ad.comarks[0], 1) << tag;
    EXPECT_EQ(ad.coxeter, std::accumulate(ad.marks.begin(), ad.marks.end(), 0)) << tag;
    EXPECT_EQ(ad.dual_coxeter, std::accumulate(ad.comarks.begin(), ad.comarks.end(), 0)) << tag;
    RootVec theta(ad.rank, 0);
    for (int i = 1; i <= ad.rank; ++i) theta[i - 1] = ad.marks[i];
    EXPECT_EQ(ad.theta, theta) << tag;
    std::set<RootVec> oracle = closure_roots(finite_part(ad));
    EXPECT_EQ(ad.positive_roots.size(), oracle.size()) << tag;
    EXPECT_EQ(ad.positive_roots.front(), ad.theta) << tag;
  }
}

TEST(AffineData, D4Marks) {
  AffineData ad = build_affine_data("D4~");
  EXPECT_EQ(ad.coxeter, 6);
  EXPECT_EQ(ad.dual_coxeter, 6);
  EXPECT_EQ(std::count(ad.marks.begin(), ad.marks.end(), 2), 1);
}

TEST(AffineData, RejectsFiniteType) {
  try {
    build_affine_data(IntMatrix{{2, -1}, {-1, 2}});
    FAIL() << "finite type accepted";
  } catch (const AlgebraError& e) {
    EXPECT_NE(std::string(e.what()).find("not affine"), std::string::npos) << e.what();
  }
}

TEST(AffineData, RejectsTwisted) {
  EXPECT_THROW(build_affine_data(IntMatrix{{2, -4}, {-1, 2}}), AlgebraError);
  EXPECT_THROW(build_affine_data(IntMatrix{{2, -1, 0}, {-2, 2, -1}, {0, -1, 2}}), AlgebraError);
}

TEST(AffineData, RejectsMalformed) {
  EXPECT_THROW(build_affine_data(IntMatrix{{2, 1}, {1, 2}}), AlgebraError);
  EXPECT_THROW(build_affine_data(IntMatrix{{2, -1}, {0, 2}}), AlgebraError);
  EXPECT_THROW(build_affine_data("B2~"), AlgebraError);
}

TEST(Weights, Wgt) {
  AffineData ad = build_affine_data("A1~");
  const int E = ad.label_of("E"), H = ad.label_of("H"), F = ad.label_of("F");
  EXPECT_EQ(ad.wgt({E, 0}), (AffWeight{{1}, 0}));
  EXPECT_EQ(ad.wgt({H, 3}), (AffWeight{{0}, 3}));
  EXPECT_EQ(ad.wgt({F, 1}), (AffWeight{{-1}, 1}));  // delta - theta = alpha_0
}

TEST(Weights, AlphaZeroA2) {
  AffineData ad = build_affine_data("A2~");
  GenIdx e0 = ad.e_index(0);
  EXPECT_EQ(e0.n, 1);
  EXPECT_EQ(ad.labels[e0.label].root, (RootVec{-1, -1}));
  EXPECT_EQ(ad.affine_height(e0), 1);
}

TEST(BasisOrder, Examples) {
  AffineData ad = build_affine_data("A1~");
  const int E = ad.label_of("E"), F = ad.label_of("F"), H = ad.label_of("H");
  EXPECT_EQ(basis_cmp({F, 0}, {E, 0}), std::strong_ordering::less);
  EXPECT_EQ(basis_cmp({E, 0}, {F, 1}), std::strong_ordering::less);
  EXPECT_EQ(basis_cmp({H, 2}, {H, 2}), std::strong_ordering::equal);
  EXPECT_EQ(basis_cmp({F, 1}, {H, 1}), std::strong_ordering::less);
  EXPECT_EQ(basis_cmp({H, 1}, {E, 1}), std::strong_ordering::less);
}

TEST(BasisOrder, ChainInsideGrade) {
  AffineData ad = build_affine_data("A2~");
  // negative roots, Cartan labels, positive roots
  for (int a = 0; a + 1 < ad.dim(); ++a) {
    const auto& x = ad.labels[a];
    const auto& y = ad.labels[a + 1];
    int cx = x.is_root ? (x.height > 0 ? 2 : 0) : 1;
    int cy = y.is_root ? (y.height > 0 ? 2 : 0) : 1;
    EXPECT_LE(cx, cy);
    EXPECT_EQ(basis_cmp({a, 3}, {a + 1, 3}), std::strong_ordering::less);
  }
}

TEST(IndexWindow, Sl2) {
  AffineData ad = build_affine_data("A1~");
  const int E = ad.label_of("E"), F = ad.label_of("F"), H = ad.label_of("H");
  EXPECT_EQ(index_window(ad, 1, Side::Plus), (std::vector<GenIdx>{{E, 0}}));
  EXPECT_EQ(index_window(ad, 2, Side::Plus), (std::vector<GenIdx>{{E, 0}, {F, 1}, {H, 1}, {E, 1}}));
  std::vector<GenIdx> minus = index_window(ad, 2, Side::Minus);
  std::vector<GenIdx> mirrored;
  for (const GenIdx& x : index_window(ad, 2, Side::Plus)) mirrored.push_back(ad.mirror(x));
  std::sort(mirrored.begin(), mirrored.end());
  EXPECT_EQ(minus, mirrored);
}

TEST(IndexWindow, Membership) {
  AffineData ad = build_affine_data("A2~");
  for (const GenIdx& x : index_window(ad, 3, Side::Plus)) {
    EXPECT_TRUE(ad.in_plus(x));
    EXPECT_FALSE(ad.in_minus(x));
    EXPECT_TRUE(ad.in_minus(ad.mirror(x)));
  }
  for (int h = 0; h < ad.dim(); ++h)
    if (!ad.is_root(h)) EXPECT_FALSE(ad.in_plus({h, 0}) || ad.in_minus({h, 0}));
}

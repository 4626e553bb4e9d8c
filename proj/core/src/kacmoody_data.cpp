#include "kmr/kacmoody_data.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <set>

#include "kmr/rational.hpp"

namespace kmr {

namespace {

IntMatrix finite_cartan(char series, int l) {
  IntMatrix a(l, std::vector<int>(l, 0));
  for (int i = 0; i < l; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) {
    a[i - 1][j - 1] = -1;
    a[j - 1][i - 1] = -1;
  };
  switch (series) {
    case 'A':
      for (int i = 1; i < l; ++i) link(i, i + 1);
      break;
    case 'D':
      if (l < 4) throw AlgebraError("D_l requires l >= 4");
      for (int i = 1; i < l - 1; ++i) link(i, i + 1);
      link(l - 2, l);
      break;
    case 'E':
      if (l < 6 || l > 8) throw AlgebraError("E_l requires 6 <= l <= 8");
      link(1, 3);
      link(3, 4);
      link(4, 5);
      link(2, 4);
      for (int i = 5; i < l; ++i) link(i, i + 1);
      break;
    default:
      throw AlgebraError("unsupported series '" + std::string(1, series) + "'");
  }
  return a;
}

// <beta, alpha_i^vee> for beta given in simple-root coordinates
int pair_coroot(const IntMatrix& fin, const RootVec& beta, int i) {
  int s = 0;
  for (size_t j = 0; j < beta.size(); ++j) s += beta[j] * fin[i][j];
  return s;
}

// Root closure starting from the simple roots; throws if a root exceeds max_height.
std::vector<RootVec> enumerate_roots(const IntMatrix& fin, int max_height) {
  const int l = static_cast<int>(fin.size());
  std::set<RootVec> roots;
  std::vector<std::vector<RootVec>> by_height(2);
  for (int i = 0; i < l; ++i) {
    RootVec r(l, 0);
    r[i] = 1;
    roots.insert(r);
    by_height[1].push_back(r);
  }
  for (int ht = 1; ht < static_cast<int>(by_height.size()); ++ht) {
    for (const RootVec& beta : by_height[ht]) {
      for (int i = 0; i < l; ++i) {
        // p = largest p with beta - p alpha_i a root
        int p = 0;
        RootVec down = beta;
        while (true) {
          down[i] -= 1;
          if (roots.count(down) == 0) break;
          ++p;
        }
        int q = p - pair_coroot(fin, beta, i);
        if (q <= 0) continue;
        RootVec up = beta;
        up[i] += 1;
        if (roots.insert(up).second) {
          if (ht + 1 > max_height) throw AlgebraError("not affine: deleted-node matrix is not of finite type");
          if (static_cast<int>(by_height.size()) <= ht + 1) by_height.emplace_back();
          by_height[ht + 1].push_back(up);
        }
      }
    }
  }
  return {roots.begin(), roots.end()};
}

// primitive positive integer vector spanning the kernel of m (rows act on columns),
// or empty when the kernel is not one-dimensional
std::vector<int> kernel_vector(const IntMatrix& m, int& corank) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  std::vector<std::vector<Q>> a(rows, std::vector<Q>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = m[i][j];
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    Q inv = 1 / a[r][c];
    for (int j = 0; j < cols; ++j) a[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Q f = a[i][c];
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  corank = cols - r;
  if (corank != 1) return {};
  int free_col = -1;
  for (int c = 0; c < cols; ++c)
    if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) free_col = c;
  std::vector<Q> v(cols, 0);
  v[free_col] = 1;
  for (int i = 0; i < r; ++i) v[pivot_col[i]] = -a[i][free_col];
  mpz_class den = 1;
  for (const Q& x : v) den = lcm(den, mpz_class(x.get_den()));
  std::vector<mpz_class> iv(cols);
  mpz_class g = 0;
  for (int c = 0; c < cols; ++c) {
    Q t = v[c] * den;
    iv[c] = t.get_num();
    g = gcd(g, iv[c]);
  }
  std::vector<int> out(cols);
  bool neg = iv[0] < 0;
  for (int c = 0; c < cols; ++c) {
    mpz_class t = iv[c] / g;
    if (neg) t = -t;
    out[c] = static_cast<int>(t.get_si());
  }
  return out;
}

IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m[0].size(), std::vector<int>(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

std::string root_name(const RootVec& r, bool rank_one) {
  bool pos = std::any_of(r.begin(), r.end(), [](int c) { return c > 0; });
  std::string s = pos ? "E" : "F";
  if (rank_one) return s;
  for (size_t i = 0; i < r.size(); ++i)
    for (int k = 0; k < std::abs(r[i]); ++k) s += std::to_string(i + 1);
  return s;
}

}  // namespace

int AffineData::label_of(const std::string& nm) const {
  for (int i = 0; i < dim(); ++i)
    if (labels[i].name == nm) return i;
  throw AlgebraError("unknown label '" + nm + "'");
}

AffWeight AffineData::wgt(const GenIdx& x) const {
  AffWeight w;
  w.fin = labels[x.label].is_root ? labels[x.label].root : RootVec(rank, 0);
  w.delta = x.n;
  return w;
}

int AffineData::affine_height(const GenIdx& x) const { return labels[x.label].height + x.n * coxeter; }

GenIdx AffineData::e_index(int i) const {
  if (i == 0) return {neg_label[root_label.at(theta)], 1};
  RootVec r(rank, 0);
  r[i - 1] = 1;
  return {root_label.at(r), 0};
}

GenIdx AffineData::f_index(int i) const { return mirror(e_index(i)); }

AffineData build_affine_data(const std::string& tag) {
  static const std::regex re(R"(^([ADE])(\d+)(~|affine)$)");
  std::smatch m;
  if (!std::regex_match(tag, m, re)) throw AlgebraError("unknown algebra tag '" + tag + "' (expected e.g. A1~, A2~, D4~)");
  char series = m[1].str()[0];
  int l = std::stoi(m[2].str());
  if (l < 1) throw AlgebraError("rank must be positive");
  IntMatrix fin = finite_cartan(series, l);
  int max_ht = 0;
  for (int i = 0; i < l; ++i) max_ht += 1000;
  std::vector<RootVec> roots = enumerate_roots(fin, max_ht);
  RootVec theta = *std::max_element(roots.begin(), roots.end(), [](const RootVec& a, const RootVec& b) {
    return std::accumulate(a.begin(), a.end(), 0) < std::accumulate(b.begin(), b.end(), 0);
  });
  IntMatrix aff(l + 1, std::vector<int>(l + 1, 0));
  aff[0][0] = 2;
  for (int j = 1; j <= l; ++j) {
    aff[0][j] = -pair_coroot(transpose(fin), theta, j - 1);
    aff[j][0] = -pair_coroot(fin, theta, j - 1);
    for (int i = 1; i <= l; ++i) aff[i][j] = fin[i - 1][j - 1];
  }
  if (l == 1) {
    aff[0][1] = -2;
    aff[1][0] = -2;
  }
  std::string norm = std::string(1, series) + std::to_string(l) + "~";
  return build_affine_data(aff, norm);
}

AffineData build_affine_data(const IntMatrix& cartan, const std::string& tag) {
  const int n = static_cast<int>(cartan.size());
  if (n < 2) throw AlgebraError("not affine: matrix must have at least two nodes");
  for (const auto& row : cartan)
    if (static_cast<int>(row.size()) != n) throw AlgebraError("not a generalized Cartan matrix: matrix is not square");
  for (int i = 0; i < n; ++i) {
    if (cartan[i][i] != 2) throw AlgebraError("not a generalized Cartan matrix: diagonal entry != 2");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (cartan[i][j] > 0) throw AlgebraError("not a generalized Cartan matrix: positive off-diagonal entry");
      if ((cartan[i][j] == 0) != (cartan[j][i] == 0))
        throw AlgebraError("not a generalized Cartan matrix: zero pattern is not symmetric");
    }
  }
  int corank = 0;
  std::vector<int> a = kernel_vector(cartan, corank);
  if (corank != 1) throw AlgebraError("not affine: corank " + std::to_string(corank) + " (affine type needs corank 1)");
  if (std::any_of(a.begin(), a.end(), [](int x) { return x <= 0; }))
    throw AlgebraError("not affine: null vector is not strictly positive");
  int corank_t = 0;
  std::vector<int> ac = kernel_vector(transpose(cartan), corank_t);
  if (std::any_of(ac.begin(), ac.end(), [](int x) { return x <= 0; }))
    throw AlgebraError("not affine: co-null vector is not strictly positive");
  if (a[0] != 1 || ac[0] != 1)
    throw AlgebraError("twisted or non-standard labelling: need a_0 = check a_0 = 1, got a_0 = " + std::to_string(a[0]) +
                       ", check a_0 = " + std::to_string(ac[0]));

  AffineData ad;
  ad.tag = tag;
  ad.cartan = cartan;
  ad.rank = n - 1;
  ad.marks = a;
  ad.comarks = ac;
  ad.coxeter = std::accumulate(a.begin(), a.end(), 0);
  ad.dual_coxeter = std::accumulate(ac.begin(), ac.end(), 0);
  const int l = ad.rank;

  IntMatrix fin(l, std::vector<int>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) fin[i][j] = cartan[i + 1][j + 1];
  std::vector<RootVec> roots = enumerate_roots(fin, ad.coxeter - 1);
  RootVec theta(a.begin() + 1, a.end());
  int theta_ht = ad.coxeter - 1;
  int max_ht = 0;
  for (const auto& r : roots) max_ht = std::max(max_ht, std::accumulate(r.begin(), r.end(), 0));
  if (std::find(roots.begin(), roots.end(), theta) == roots.end() || max_ht != theta_ht)
    throw AlgebraError("twisted type: sum of marks over finite nodes is not the highest root");
  // node 0 must be attached as the negative highest root
  for (int j = 1; j <= l; ++j) {
    if (cartan[j][0] != -pair_coroot(fin, theta, j - 1))
      throw AlgebraError("twisted type: node 0 is not attached as minus the highest root");
  }
  ad.theta = theta;

  // basis order on positive roots: height descending, ties lexicographically descending
  std::vector<RootVec> pos = roots;
  std::sort(pos.begin(), pos.end(), [](const RootVec& x, const RootVec& y) {
    int hx = std::accumulate(x.begin(), x.end(), 0);
    int hy = std::accumulate(y.begin(), y.end(), 0);
    if (hx != hy) return hx > hy;
    return x > y;
  });
  ad.positive_roots = pos;

  const bool rank_one = (l == 1);
  // negatives: E_{-beta} before E_{-alpha} when alpha precedes beta
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
    LabelInfo li;
    li.is_root = true;
    li.root = *it;
    for (int& c : li.root) c = -c;
    li.height = -std::accumulate(it->begin(), it->end(), 0);
    li.name = root_name(li.root, rank_one);
    ad.labels.push_back(li);
  }
  ad.cartan_label.assign(l + 1, -1);
  for (int i = 1; i <= l; ++i) {
    LabelInfo li;
    li.root = RootVec(l, 0);
    li.node = i;
    li.name = rank_one ? "H" : "H" + std::to_string(i);
    ad.cartan_label[i] = ad.dim();
    ad.labels.push_back(li);
  }
  for (const auto& r : pos) {
    LabelInfo li;
    li.is_root = true;
    li.root = r;
    li.height = std::accumulate(r.begin(), r.end(), 0);
    li.name = root_name(r, rank_one);
    ad.labels.push_back(li);
  }
  for (int i = 0; i < ad.dim(); ++i)
    if (ad.labels[i].is_root) ad.root_label[ad.labels[i].root] = i;
  ad.neg_label.resize(ad.dim());
  for (int i = 0; i < ad.dim(); ++i) {
    if (!ad.labels[i].is_root) {
      ad.neg_label[i] = i;
      continue;
    }
    RootVec r = ad.labels[i].root;
    for (int& c : r) c = -c;
    ad.neg_label[i] = ad.root_label.at(r);
  }
  return ad;
}

std::strong_ordering basis_cmp(const GenIdx& x, const GenIdx& y) { return x <=> y; }

std::vector<GenIdx> index_window(const AffineData& ad, int k, Side side) {
  if (k < 1) throw AlgebraError("index_window: cutoff must be >= 1");
  std::vector<GenIdx> plus;
  for (int n = 0; n < k; ++n)
    for (int a = 0; a < ad.dim(); ++a) {
      GenIdx x{a, n};
      if (ad.in_plus(x)) plus.push_back(x);
    }
  if (side == Side::Plus) return plus;
  std::vector<GenIdx> minus;
  for (const auto& x : plus) minus.push_back(ad.mirror(x));
  std::sort(minus.begin(), minus.end());
  if (side == Side::Minus) return minus;
  std::vector<GenIdx> both = minus;
  both.insert(both.end(), plus.begin(), plus.end());
  std::sort(both.begin(), both.end());
  return both;
}

std::string genidx_str(const AffineData& ad, const GenIdx& x) { return ad.name(x.label) + "," + std::to_string(x.n); }

}  // namespace kmr

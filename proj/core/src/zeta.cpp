#include "kmr/zeta.hpp"

#include <algorithm>

namespace kmr {

namespace {

std::string series_str(const std::vector<Q>& c, bool big_o) {
  std::string out;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c[n] == 0) continue;
    Q a = abs(c[n]);
    out += c[n] < 0 ? (out.empty() ? "-" : " - ") : (out.empty() ? "" : " + ");
    std::string zp = n == 0 ? "" : n == 1 ? "z" : "z^" + std::to_string(n);
    if (n == 0) {
      out += q_str(a);
    } else {
      out += (a == 1 ? "" : q_str(a) + "*") + zp;
    }
  }
  if (out.empty()) out = "0";
  if (big_o) out += " + O(z^" + std::to_string(c.size()) + ")";
  return out;
}

void trim(std::vector<Q>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// power series in y of sum_j c_j e^{j y}, to order n inclusive
std::vector<Q> exp_substitute(const std::vector<Q>& c, int n) {
  std::vector<Q> out(n + 1, Q(0));
  Q fact = 1;
  for (int m = 0; m <= n; ++m) {
    if (m > 0) fact *= m;
    Q s = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      Q p = 1;
      for (int t = 0; t < m; ++t) p *= static_cast<long>(j);
      s += c[j] * p;
    }
    out[m] = s / fact;
  }
  return out;
}

}  // namespace

std::vector<Q> RationalFunction::expand(int terms) const {
  if (den.empty() || den[0] == 0) throw ZetaError("rational function: denominator must not vanish at z = 0");
  std::vector<Q> out(terms, Q(0));
  for (int n = 0; n < terms; ++n) {
    Q s = n < static_cast<int>(num.size()) ? num[n] : Q(0);
    for (int j = 1; j <= n && j < static_cast<int>(den.size()); ++j) s -= den[j] * out[n - j];
    out[n] = s / den[0];
  }
  return out;
}

std::string RationalFunction::str() const {
  std::vector<Q> d = den;
  trim(d);
  std::string n = "(" + series_str(num, false) + ")";
  if (d.size() <= 1 && (d.empty() || d[0] == 1)) return n;
  return n + "/(" + series_str(d, false) + ")";
}

std::string RationalSeries::str() const { return series_str(coeffs, true); }

RationalSeries regulated_first_product(const LoopAlgebra& g, const PhiMap& phi, const LieElt& x, const LieElt& y,
                                       int terms) {
  if (terms < 1) throw ZetaError("regulated product: need at least one term");
  // degree one suffices for the vacuum coefficient; keys up to the last power are needed
  Realization R(g, terms + 1, 1);
  D1State a = vartheta_state(R, phi, x), b = vartheta_state(R, phi, y);
  RationalSeries s;
  s.coeffs.assign(terms, Q(0));
  for (const auto& [deg, p] : first_product_regulated(a, b))
    if (deg < terms) s.coeffs[deg] = p.constant();
  return s;
}

RationalSeries reconstruct_rational(const RationalSeries& s, int max_num, int max_den) {
  const auto& c = s.coeffs;
  int len = static_cast<int>(c.size());
  if (max_num < 0) max_num = std::max(0, len / 2 - 1);
  if (max_den < 0) max_den = std::max(0, len / 2 - 1);
  for (int total = 0; total <= max_num + max_den; ++total)
    for (int dq = 0; dq <= std::min(total, max_den); ++dq) {
      int dp = total - dq;
      if (dp > max_num || dp + dq + 1 > len) continue;
      // sum_{j=0}^{dq} q_j c_{k-j} = 0 for k = dp+1 .. dp+dq, q_0 = 1
      LinearSystem sys(dq);
      for (int k = dp + 1; k <= dp + dq; ++k) {
        SparseRow row;
        for (int j = 1; j <= dq; ++j)
          if (k - j >= 0 && c[k - j] != 0) row[j - 1] = c[k - j];
        sys.add_row(row, -c[k]);
      }
      LinearSolution sol;
      try {
        sol = solve(sys);
      } catch (const InconsistentSystem&) {
        continue;
      }
      RationalFunction r;
      r.den.assign(dq + 1, Q(0));
      r.den[0] = 1;
      for (int j = 1; j <= dq; ++j) r.den[j] = sol.x[j - 1];
      r.num.assign(dp + 1, Q(0));
      for (int k = 0; k <= dp; ++k)
        for (int j = 0; j <= std::min(k, dq); ++j) r.num[k] += r.den[j] * c[k - j];
      trim(r.num);
      trim(r.den);
      if (r.expand(len) != c) continue;
      RationalSeries out = s;
      out.reconstructed = r;
      out.certificate = len - (dp + dq + 1);
      return out;
    }
  throw ZetaError("no fit within bounds");
}

Q zeta_constant_term(const RationalFunction& r, int max_pole_order) {
  // pole order at y = 0: vanishing order of q(e^y)
  std::vector<Q> d0 = exp_substitute(r.den, max_pole_order + 1);
  int v = 0;
  while (v <= max_pole_order + 1 && d0[v] == 0) ++v;
  if (v > max_pole_order) throw ZetaError("essential singularity bounds exceeded");
  int order = v + 2;
  std::vector<Q> num = exp_substitute(r.num, order), den = exp_substitute(r.den, order + v);
  // q(e^y) = y^v u(y) with u(0) != 0; constant term of p/q = coefficient of y^v in p/u
  std::vector<Q> u(den.begin() + v, den.end());
  std::vector<Q> inv(v + 1, Q(0));
  inv[0] = 1 / u[0];
  for (int n = 1; n <= v; ++n) {
    Q s = 0;
    for (int j = 1; j <= n; ++j) s += u[j] * inv[n - j];
    inv[n] = -s / u[0];
  }
  Q out = 0;
  for (int j = 0; j <= v; ++j) out += num[j] * inv[v - j];
  return out;
}

std::vector<std::pair<LieElt, LieElt>> default_zeta_pairs(const LoopAlgebra& g) {
  if (g.data().tag != "A1~") return {};
  return {{g.parse("H,0"), g.parse("H,0")},
          {g.parse("E,1"), g.parse("F,-1")},
          {g.parse("H,1"), g.parse("H,-1")},
          {g.parse("E,-2"), g.parse("F,2")}};
}

ZetaRow zeta_row(const LoopAlgebra& g, const PhiMap& phi, const LieElt& x, const LieElt& y, int terms) {
  // fit on a longer prefix so the default degree bounds leave a certificate
  ZetaRow row{x, y, reconstruct_rational(regulated_first_product(g, phi, x, y, terms + 8)), Q(0)};
  row.constant = zeta_constant_term(*row.series.reconstructed);
  return row;
}

}  // namespace kmr

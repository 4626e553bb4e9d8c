#include "kmr/realization.hpp"

namespace kmr {

void DgElement::add_s(const SKey& k, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = s.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) s.erase(it);
  }
}

DgElement& DgElement::operator+=(const DgElement& o) {
  vf += o.vf;
  for (const auto& [k, c] : o.s) add_s(k, c);
  d += o.d;
  return *this;
}

DgElement& DgElement::operator-=(const DgElement& o) {
  vf -= o.vf;
  for (const auto& [k, c] : o.s) add_s(k, -c);
  d -= o.d;
  return *this;
}

DgElement& DgElement::operator*=(const Q& c) {
  vf *= c;
  if (c == 0) s.clear();
  for (auto& [k, v] : s) v *= c;
  d *= c;
  return *this;
}

Poly tau(const StructureConstants& sc, const Poly& p) {
  const AffineData& ad = sc.data();
  Poly r;
  for (const auto& [m, c] : p.terms()) {
    Monomial mm;
    int sign = 1;
    for (const auto& vp : m.factors()) {
      GenIdx x = var_idx(vp.var);
      if (sc.sigma_sign(x) < 0 && vp.exp % 2 == 1) sign = -sign;
      mm = mm * Monomial::of(ad.mirror(x), vp.exp);
    }
    r.add(mm, sign * c);
  }
  return r;
}

VectorField tau(const StructureConstants& sc, const VectorField& v) {
  VectorField r;
  for (const auto& [c, p] : v.coeffs) r.add(sc.data().mirror(c), tau(sc, p), Q(sc.sigma_sign(c)));
  r.window = v.window;
  r.window.min_key = -v.window.max_key;
  r.window.max_key = -v.window.min_key;
  r.window.min_var = -v.window.max_var;
  r.window.max_var = -v.window.min_var;
  return r;
}

OneForm tau(const StructureConstants& sc, const OneForm& w) {
  OneForm r;
  for (const auto& [c, p] : w.coeffs) r.add(sc.data().mirror(c), tau(sc, p), Q(sc.sigma_sign(c)));
  return r;
}

std::map<SKey, Q> s_image(const StructureConstants& sc, const LieElt& A) {
  DgElement tmp;
  for (const auto& [key, c] : A.terms()) {
    if (key.kind != LieKey::J) continue;
    for (int b = 0; b < sc.dim(); ++b)
      for (const auto& [cc, f] : sc.f(b, key.idx.label)) tmp.add_s({b, cc, key.idx.n}, c * f);
  }
  return tmp.s;
}

VectorField iota_s(const SKey& s, int k) {
  VectorField v;
  for (int m = -(k - 1); m <= k - 1; ++m) v.add({s.b, m}, Poly::var({s.a, m - s.n}));
  v.window = {-(k - 1), k - 1, -(k - 1) - s.n, k - 1 - s.n};
  return v;
}

VectorField iota_d(const AffineData& ad, int k) {
  VectorField v;
  for (int m = -(k - 1); m <= k - 1; ++m)
    if (m != 0)
      for (int c = 0; c < ad.dim(); ++c) v.add({c, m}, Poly::var({c, m}), Q(-m));
  v.window = {-(k - 1), k - 1, -(k - 1), k - 1};
  return v;
}

Poly apply_iota_s(const SKey& s, const Poly& p) {
  Poly r;
  for (const GenIdx& x : p.variables()) {
    if (x.label != s.b) continue;
    r += Poly::var({s.a, x.n - s.n}) * p.diff(x);
  }
  return r;
}

Poly apply_iota_d(const Poly& p) {
  Poly r;
  for (const GenIdx& x : p.variables())
    if (x.n != 0) r.add_scaled(Poly::var(x) * p.diff(x), Q(-x.n));
  return r;
}

Poly apply_dg(const DgElement& x, const Poly& p) {
  Poly r = apply_vf(x.vf, p);
  for (const auto& [s, c] : x.s) r.add_scaled(apply_iota_s(s, p), c);
  if (x.d != 0) r.add_scaled(apply_iota_d(p), x.d);
  return r;
}

VectorField s_action(const SKey& s, const VectorField& v) {
  VectorField r;
  for (const auto& [c, p] : v.coeffs) {
    r.add(c, apply_iota_s(s, p));
    if (c.label == s.a) r.add({s.b, c.n + s.n}, p, Q(-1));
  }
  return r;
}

VectorField d_action(const VectorField& v) {
  VectorField r;
  for (const auto& [c, p] : v.coeffs) {
    r.add(c, apply_iota_d(p));
    if (c.n != 0) r.add(c, p, Q(c.n));
  }
  return r;
}

DgElement dg_bracket(const DgElement& x, const DgElement& y) {
  DgElement r;
  r.vf = vf_bracket(x.vf, y.vf);
  for (const auto& [s, c] : x.s) r.vf.add_scaled_field(s_action(s, y.vf), c);
  for (const auto& [s, c] : y.s) r.vf.add_scaled_field(s_action(s, x.vf), -c);
  if (x.d != 0) r.vf.add_scaled_field(d_action(y.vf), x.d);
  if (y.d != 0) r.vf.add_scaled_field(d_action(x.vf), -y.d);
  for (const auto& [s1, c1] : x.s)
    for (const auto& [s2, c2] : y.s) {
      // [S^a_{b,n}, S^c_{d,m}] = delta^c_b S^a_{d,n+m} - delta^a_d S^c_{b,n+m}
      if (s2.a == s1.b) r.add_s({s1.a, s2.b, s1.n + s2.n}, c1 * c2);
      if (s1.a == s2.b) r.add_s({s2.a, s1.b, s1.n + s2.n}, -c1 * c2);
    }
  if (x.d != 0)
    for (const auto& [s, c] : y.s) r.add_s(s, x.d * c * s.n);
  if (y.d != 0)
    for (const auto& [s, c] : x.s) r.add_s(s, -y.d * c * s.n);
  return r;
}

Realization::Realization(const LoopAlgebra& g, int k, int max_degree) : g_(g), k_(k), engine_(g, max_degree) {
  if (k < 1) throw AlgebraError("cutoff must be >= 1");
}

VectorField Realization::rho(const LieElt& A) const {
  VectorField v;
  for (auto& [x, p] : engine_.flow(A, k_)) v.add(x, p);
  int nmin = 0;
  for (const auto& [key, c] : A.terms())
    if (key.kind == LieKey::J) nmin = std::min(nmin, key.idx.n);
  v.window = {0, k_ - 1, 0, k_ - 1 - nmin};
  return v;
}

VectorField Realization::rho_minus(const LieElt& A) const { return tau(g_.sc(), rho(g_.cartan_sigma(A))); }

VectorField Realization::jplus(int a, int n) const {
  const StructureConstants& sc = g_.sc();
  VectorField v;
  for (int b = 0; b < sc.dim(); ++b)
    for (const auto& [c, f] : sc.f(b, a))
      for (int m = std::max(1, n) + 1; m < k_; ++m) v.add({c, m}, Poly::var({b, m - n}), f);
  v.window = {0, k_ - 1, 0, k_ - 1 - std::min(n, 0)};
  return v;
}

PolyFamily Realization::rplus(int a, int n) const {
  VectorField v = rho(LieElt::j(a, n));
  v -= jplus(a, n);
  return v.coeffs;
}

DgElement Realization::uprho(const LieElt& A) const {
  DgElement r;
  r.vf = rho(A);
  r.vf += rho_minus(A);
  r.s = s_image(g_.sc(), A);
  r.d = A.coeff(LieKey::d());
  for (const auto& [s, c] : r.s) r.vf.add_scaled_field(iota_s(s, k_), -c);
  if (r.d != 0) r.vf.add_scaled_field(iota_d(g_.data(), k_), -r.d);
  r.vf.window = {-(k_ - 1), k_ - 1, -(k_ - 1), k_ - 1};
  return r;
}

PolyFamily Realization::r_polys(int a, int n) const { return uprho(LieElt::j(a, n)).vf.coeffs; }

VectorField rho(const LoopAlgebra& g, const LieElt& A, int k) { return Realization(g, k).rho(A); }
VectorField jplus(const LoopAlgebra& g, int a, int n, int k) { return Realization(g, k).jplus(a, n); }
PolyFamily rplus(const LoopAlgebra& g, int a, int n, int k) { return Realization(g, k).rplus(a, n); }
DgElement uprho(const LoopAlgebra& g, const LieElt& A, int k) { return Realization(g, k).uprho(A); }
PolyFamily r_polys(const LoopAlgebra& g, int a, int n, int k) { return Realization(g, k).r_polys(a, n); }

StabilizeReport check_stabilizes(const LoopAlgebra& g, const DgElement& x, int var_bound, int samples,
                                 std::mt19937_64& rng) {
  const AffineData& ad = g.data();
  StabilizeReport rep;
  for (Side side : {Side::Plus, Side::Minus}) {
    std::vector<GenIdx> vars = index_window(ad, var_bound, side);
    auto inside = [&](const GenIdx& v) { return side == Side::Plus ? ad.in_plus(v) : ad.in_minus(v); };
    std::vector<Poly> probes{Poly(1)};
    for (const GenIdx& v : vars) probes.push_back(Poly::var(v));
    for (size_t i = 0; i < vars.size(); ++i)
      for (size_t j = i; j < vars.size(); ++j) probes.push_back(Poly::var(vars[i]) * Poly::var(vars[j]));
    std::uniform_int_distribution<size_t> pick(0, vars.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int t = 0; t < samples && !vars.empty(); ++t) {
      Poly p;
      for (int term = 0; term < 3; ++term) {
        Poly m(coef(rng));
        for (int d = 0; d < 3; ++d) m = m * Poly::var(vars[pick(rng)]);
        p += m;
      }
      probes.push_back(p);
    }
    for (const Poly& p : probes) {
      ++rep.samples;
      Poly out = apply_dg(x, p);
      for (const GenIdx& v : out.variables())
        if (!inside(v)) {
          rep.ok = false;
          if (rep.escapes.size() < 8) rep.escapes.push_back(render_var(ad, v) + " from " + render(ad, p));
        }
    }
  }
  return rep;
}

bool check_stabilizes(const LoopAlgebra& g, const LieElt& A, int k) {
  std::mt19937_64 rng(12345);
  return check_stabilizes(g, uprho(g, A, k), k, 24, rng).ok;
}

}  // namespace kmr

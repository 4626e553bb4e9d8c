#include "kmr/depth1.hpp"

namespace kmr {

namespace {

void fam_add(PolyFamily& f, const GenIdx& c, const Poly& p, const Q& s = 1) {
  if (p.is_zero() || s == 0) return;
  auto [it, fresh] = f.try_emplace(c);
  it->second.add_scaled(p, s);
  if (it->second.is_zero()) f.erase(it);
}

void s_add(std::map<SKey, Q>& m, const SKey& k, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = m.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

void b_add(std::map<int, Poly>& m, int j, const Poly& p, const Q& s = 1) {
  if (p.is_zero() || s == 0) return;
  auto [it, fresh] = m.try_emplace(j);
  it->second.add_scaled(p, s);
  if (it->second.is_zero()) m.erase(it);
}

// apply a derivation (given on polynomials) to every coefficient polynomial
template <class F>
void map_polys(const D1State& x, D1State& out, const Q& s, F&& f) {
  if (!x.vac.is_zero()) out.vac.add_scaled(f(x.vac), s);
  for (const auto& [c, p] : x.beta) fam_add(out.beta, c, f(p), s);
  for (const auto& [c, p] : x.gamma.coeffs) out.gamma.add(c, f(p), s);
  for (const auto& [j, p] : x.b) b_add(out.b, j, f(p), s);
}

VectorField as_vf(const PolyFamily& f) {
  VectorField v;
  v.coeffs = f;
  return v;
}

// X_(0) B for a current X (an S or D field)
D1State current_zero(const SKey* s, const D1State& x) {
  D1State out;
  if (s) {
    map_polys(x, out, 1, [&](const Poly& p) { return apply_iota_s(*s, p); });
    for (const auto& [c, p] : x.beta)
      if (c.label == s->a) fam_add(out.beta, {s->b, c.n + s->n}, p, -1);
    for (const auto& [c, p] : x.gamma.coeffs)
      if (c.label == s->b) out.gamma.add({s->a, c.n - s->n}, p);
    for (const auto& [t, c] : x.s) {
      if (t.a == s->b) s_add(out.s, {s->a, t.b, s->n + t.n}, c);
      if (s->a == t.b) s_add(out.s, {t.a, s->b, s->n + t.n}, -c);
    }
    if (x.d != 0 && s->n != 0) s_add(out.s, *s, -x.d * s->n);
  } else {
    map_polys(x, out, 1, [&](const Poly& p) { return apply_iota_d(p); });
    for (const auto& [c, p] : x.beta)
      if (c.n != 0) fam_add(out.beta, c, p, Q(c.n));
    for (const auto& [c, p] : x.gamma.coeffs)
      if (c.n != 0) out.gamma.add(c, p, Q(-c.n));
    for (const auto& [t, c] : x.s) s_add(out.s, t, c * t.n);
  }
  out.gamma.prune();
  return out;
}

// X_(1) B for a current X; a polynomial (level zero: no current-current terms)
Poly current_first(const SKey* s, const D1State& x) {
  Poly out;
  if (s) {
    for (const auto& [c, p] : x.beta)
      if (c.label == s->a) out.add_scaled(p.diff({s->b, c.n + s->n}), -1);
    for (const auto& [c, q] : x.gamma.coeffs)
      if (c.label == s->b) out += q * Poly::var({s->a, c.n - s->n});
  } else {
    for (const auto& [c, p] : x.beta)
      if (c.n != 0) out.add_scaled(p.diff(c), Q(c.n));
    for (const auto& [c, q] : x.gamma.coeffs)
      if (c.n != 0) out.add_scaled(q * Poly::var(c), Q(-c.n));
  }
  return out;
}

D1State free_part(const D1State& x) {
  D1State f = x;
  f.s.clear();
  f.d = 0;
  return f;
}

// A_(0) B for A, B without current parts
D1State free_zero(const D1State& a, const D1State& b) {
  D1State out;
  VectorField va = as_vf(a.beta), vb = as_vf(b.beta);
  if (!va.is_zero()) map_polys(b, out, 1, [&](const Poly& p) { return apply_vf(va, p); });
  if (!vb.is_zero()) map_polys(a, out, -1, [&](const Poly& p) { return apply_vf(vb, p); });
  for (const auto& [c, q] : b.gamma.coeffs) {
    auto it = a.beta.find(c);
    if (it == a.beta.end()) continue;
    OneForm w = exterior_d(it->second);
    for (auto& [k, p] : w.coeffs) p = p * q;
    out.gamma += w;
  }
  for (const auto& [c, q] : a.gamma.coeffs) {
    auto it = b.beta.find(c);
    if (it == b.beta.end()) continue;
    OneForm w = exterior_d(q);
    for (auto& [k, p] : w.coeffs) p = p * it->second;
    out.gamma += w;
  }
  out.gamma += double_contraction_form(va, vb);
  out.gamma.prune();
  return out;
}

}  // namespace

D1State D1State::from_dg(const DgElement& x) {
  D1State r;
  r.beta = x.vf.coeffs;
  for (auto it = r.beta.begin(); it != r.beta.end();) it = it->second.is_zero() ? r.beta.erase(it) : std::next(it);
  r.s = x.s;
  r.d = x.d;
  return r;
}

D1State D1State::from_form(const OneForm& w) {
  D1State r;
  r.gamma = w;
  r.gamma.prune();
  return r;
}

bool D1State::is_zero() const {
  return vac.is_zero() && beta.empty() && gamma.is_zero() && s.empty() && d == 0 && b.empty();
}

void D1State::prune() {
  for (auto it = beta.begin(); it != beta.end();) it = it->second.is_zero() ? beta.erase(it) : std::next(it);
  for (auto it = b.begin(); it != b.end();) it = it->second.is_zero() ? b.erase(it) : std::next(it);
  gamma.prune();
}

DgElement D1State::dg_part() const {
  DgElement r;
  r.vf.coeffs = beta;
  r.s = s;
  r.d = d;
  return r;
}

D1State& D1State::operator+=(const D1State& o) {
  vac += o.vac;
  for (const auto& [c, p] : o.beta) fam_add(beta, c, p);
  gamma += o.gamma;
  gamma.prune();
  for (const auto& [k, c] : o.s) s_add(s, k, c);
  d += o.d;
  for (const auto& [j, p] : o.b) b_add(b, j, p);
  return *this;
}

D1State& D1State::operator-=(const D1State& o) {
  vac -= o.vac;
  for (const auto& [c, p] : o.beta) fam_add(beta, c, p, -1);
  gamma -= o.gamma;
  gamma.prune();
  for (const auto& [k, c] : o.s) s_add(s, k, -c);
  d -= o.d;
  for (const auto& [j, p] : o.b) b_add(b, j, p, -1);
  return *this;
}

D1State& D1State::operator*=(const Q& c) {
  if (c == 0) {
    *this = D1State();
    return *this;
  }
  vac *= c;
  for (auto& [k, p] : beta) p *= c;
  gamma *= c;
  for (auto& [k, v] : s) v *= c;
  d *= c;
  for (auto& [k, p] : b) p *= c;
  return *this;
}

bool D1State::operator==(const D1State& o) const {
  D1State diff = *this;
  diff -= o;
  diff.prune();
  return diff.is_zero();
}

VAState D1State::to_state() const {
  VAState out;
  auto poly_words = [&](const Poly& p, const Sym* tail) {
    for (const auto& [m, c] : p.terms()) {
      Word w;
      for (const auto& vp : m.factors())
        for (std::uint32_t e = 0; e < vp.exp; ++e) w.push_back(Sym::gamma(var_idx(vp.var), 0));
      if (tail) w.push_back(*tail);
      std::sort(w.begin(), w.end());
      out.add(w, ZPoly(c));
    }
  };
  poly_words(vac, nullptr);
  for (const auto& [c, p] : beta) {
    Sym t = Sym::beta(c, -1);
    poly_words(p, &t);
  }
  for (const auto& [c, p] : gamma.coeffs) {
    Sym t = Sym::gamma(c, -1);
    poly_words(p, &t);
  }
  for (const auto& [j, p] : b) {
    Sym t = Sym::bfield(j, -1);
    poly_words(p, &t);
  }
  for (const auto& [k, c] : s) out.add({Sym::s(k.a, k.b, k.n, -1)}, ZPoly(c));
  if (d != 0) out.add({Sym::d(-1)}, ZPoly(d));
  return out;
}

OneForm double_contraction_form(const VectorField& x, const VectorField& y) {
  // - sum_{c,e} d(D_e P^c) (D_c Q^e)
  OneForm out;
  for (const auto& [c, p] : x.coeffs)
    for (const GenIdx& e : p.variables()) {
      auto it = y.coeffs.find(e);
      if (it == y.coeffs.end()) continue;
      Poly dq = it->second.diff(c);
      if (dq.is_zero()) continue;
      OneForm w = exterior_d(p.diff(e));
      for (auto& [k, v] : w.coeffs) out.add(k, v * dq, Q(-1));
    }
  out.prune();
  return out;
}

Poly double_contraction_scalar(const VectorField& x, const VectorField& y) {
  Poly out;
  for (const auto& [c, p] : x.coeffs)
    for (const GenIdx& e : p.variables()) {
      auto it = y.coeffs.find(e);
      if (it == y.coeffs.end()) continue;
      Poly dq = it->second.diff(c);
      if (dq.is_zero()) continue;
      out -= p.diff(e) * dq;
    }
  return out;
}

D1State zero_product(const D1State& a, const D1State& b) {
  if (!a.vac.is_zero() || !b.vac.is_zero()) throw std::invalid_argument("zero_product: depth-one states only");
  D1State fa = free_part(a), fb = free_part(b);
  D1State out = free_zero(fa, fb);
  // currents on the left
  for (const auto& [k, c] : a.s) {
    D1State t = current_zero(&k, b);
    t *= c;
    out += t;
  }
  if (a.d != 0) {
    D1State t = current_zero(nullptr, b);
    t *= a.d;
    out += t;
  }
  // free on the left, currents on the right: A_(0) X = -X_(0) A + T(X_(1) A)
  auto skew = [&](const SKey* s, const Q& c) {
    D1State t = current_zero(s, fa);
    t *= -c;
    out += t;
    OneForm w = exterior_d(current_first(s, fa));
    out.gamma.add_scaled_form(w, c);
  };
  for (const auto& [k, c] : b.s) skew(&k, c);
  if (b.d != 0) skew(nullptr, b.d);
  out.prune();
  return out;
}

Poly first_product(const D1State& a, const D1State& b) {
  Poly out;
  for (const auto& [c, q] : b.gamma.coeffs) {
    auto it = a.beta.find(c);
    if (it != a.beta.end()) out += it->second * q;
  }
  for (const auto& [c, q] : a.gamma.coeffs) {
    auto it = b.beta.find(c);
    if (it != b.beta.end()) out += it->second * q;
  }
  out += double_contraction_scalar(as_vf(a.beta), as_vf(b.beta));
  D1State fa = free_part(a), fb = free_part(b);
  for (const auto& [k, c] : a.s) out.add_scaled(current_first(&k, fb), c);
  if (a.d != 0) out.add_scaled(current_first(nullptr, fb), a.d);
  for (const auto& [k, c] : b.s) out.add_scaled(current_first(&k, fa), c);
  if (b.d != 0) out.add_scaled(current_first(nullptr, fa), b.d);
  return out;
}

std::map<int, Poly> first_product_regulated(const D1State& a, const D1State& b) {
  if (!a.s.empty() || !b.s.empty() || a.d != 0 || b.d != 0)
    throw DivergenceError("regulated products are defined for free fields only");
  std::map<int, Poly> out;
  auto put = [&](int deg, const Poly& p) {
    if (deg < 0) throw DivergenceError("regulator requires non-negative grades");
    if (!p.is_zero()) out[deg] += p;
  };
  for (const auto& [c, q] : b.gamma.coeffs) {
    auto it = a.beta.find(c);
    if (it != a.beta.end()) put(c.n, it->second * q);
  }
  for (const auto& [c, q] : a.gamma.coeffs) {
    auto it = b.beta.find(c);
    if (it != b.beta.end()) put(c.n, it->second * q);
  }
  for (const auto& [c, p] : a.beta)
    for (const GenIdx& e : p.variables()) {
      auto it = b.beta.find(e);
      if (it == b.beta.end()) continue;
      Poly dq = it->second.diff(c);
      if (dq.is_zero()) continue;
      put(c.n + e.n, -(p.diff(e) * dq));
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

namespace {

void require_certificate(const DgElement& x) {
  if (!x.vf.is_zero() && x.vf.window.max_key < x.vf.window.min_key)
    throw DivergenceError("omega: vector field without a gap certificate");
}

}  // namespace

OmegaValue omega_cocycle(const DgElement& a, int k, const DgElement& b, int l) {
  require_certificate(a);
  require_certificate(b);
  OmegaValue r;
  r.scalar_mode = k + l - 1;
  r.form_mode = k + l;
  if (k != 0) r.scalar = Q(k) * double_contraction_scalar(a.vf, b.vf);
  r.form = double_contraction_form(a.vf, b.vf);
  return r;
}

OmegaValue omega_from_products(const DgElement& a, int k, const DgElement& b, int l) {
  require_certificate(a);
  require_certificate(b);
  D1State ja = D1State::from_dg(a), jb = D1State::from_dg(b);
  OmegaValue r;
  r.scalar_mode = k + l - 1;
  r.form_mode = k + l;
  if (k != 0) r.scalar = Q(k) * first_product(ja, jb);
  D1State z = zero_product(ja, jb);
  z -= D1State::from_dg(dg_bracket(a, b));
  z.prune();
  r.form = z.gamma;
  return r;
}

}  // namespace kmr

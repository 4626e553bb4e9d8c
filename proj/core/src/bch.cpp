#include "kmr/bch.hpp"

#include <algorithm>

namespace kmr {

bool NilCoeff::is_zero() const {
  return std::all_of(part.begin(), part.end(), [](const Poly& p) { return p.is_zero(); });
}

NilCoeff& NilCoeff::operator+=(const NilCoeff& o) {
  for (int i = 0; i < 4; ++i) part[i] += o.part[i];
  return *this;
}

NilCoeff& NilCoeff::operator-=(const NilCoeff& o) {
  for (int i = 0; i < 4; ++i) part[i] -= o.part[i];
  return *this;
}

NilCoeff operator*(const NilCoeff& a, const NilCoeff& b) {
  NilCoeff r;
  r.part[0] = a.part[0] * b.part[0];
  r.part[1] = a.part[0] * b.part[1] + a.part[1] * b.part[0];
  r.part[2] = a.part[0] * b.part[2] + a.part[2] * b.part[0];
  r.part[3] = a.part[0] * b.part[3] + a.part[3] * b.part[0] + a.part[1] * b.part[2] + a.part[2] * b.part[1];
  return r;
}

NilCoeff eval_nil(const Poly& p, const std::function<NilCoeff(const GenIdx&)>& x) {
  std::map<VarCode, NilCoeff> cache;
  NilCoeff r;
  for (const auto& [m, c] : p.terms()) {
    NilCoeff t{Poly(c)};
    for (const auto& vp : m.factors()) {
      auto it = cache.find(vp.var);
      if (it == cache.end()) it = cache.emplace(vp.var, x(var_idx(vp.var))).first;
      for (std::uint32_t e = 0; e < vp.exp; ++e) t = t * it->second;
    }
    r += t;
  }
  return r;
}

void GroupWord::set(const GenIdx& x, const NilCoeff& c) {
  if (c.is_zero()) factors.erase(x);
  else factors[x] = c;
}

NilCoeff GroupWord::exponent(const GenIdx& x) const {
  auto it = factors.find(x);
  return it == factors.end() ? NilCoeff() : it->second;
}

GroupWord generic_word(const AffineData& ad, int k) {
  GroupWord w;
  w.truncation_k = k;
  for (const GenIdx& x : index_window(ad, k, Side::Plus)) w.factors[x] = NilCoeff(Poly::var(x));
  return w;
}

GroupWord pi_truncate(const GroupWord& w, int k) {
  if (k > w.truncation_k) throw TruncationError("pi_truncate: k exceeds the word's truncation");
  GroupWord r;
  r.truncation_k = k;
  r.coset = w.coset;
  for (const auto& [x, c] : w.factors)
    if (x.n < k) r.factors.emplace(x, c);
  return r;
}

// Dense loop-algebra element over t-grades [nmin, kcut) plus k and d slots.
struct FlowEngine::Dense {
  int nmin = 0;
  int kcut = 0;
  int dim = 0;
  std::vector<Poly> j;
  Poly kc, dc;

  Dense(int nmin_, int kcut_, int dim_) : nmin(nmin_), kcut(kcut_), dim(dim_), j(static_cast<size_t>((kcut_ - nmin_) * dim_)) {}
  int slot(int label, int n) const { return (n - nmin) * dim + label; }
  bool in_range(int n) const { return n >= nmin && n < kcut; }
  GenIdx idx(int s) const { return {s % dim, s / dim + nmin}; }
  bool is_zero() const {
    return kc.is_zero() && dc.is_zero() && std::all_of(j.begin(), j.end(), [](const Poly& p) { return p.is_zero(); });
  }
};

namespace {

void add_trunc(Poly& dst, const Poly& src, const Q& c, const Monomial& m, int max_degree) {
  if (max_degree < 0) {
    dst.add_scaled(src, c, m);
    return;
  }
  const int dm = static_cast<int>(m.degree());
  for (const auto& [mm, v] : src.terms())
    if (static_cast<int>(mm.degree()) + dm <= max_degree) dst.add(mm * m, v * c);
}

int min_grade(const LieElt& A) {
  int n = 0;
  for (const auto& [k, c] : A.terms())
    if (k.kind == LieKey::J) n = std::min(n, k.idx.n);
  return n;
}

std::map<LieKey, NilCoeff> nil_bracket(const LoopAlgebra& g, const std::map<LieKey, NilCoeff>& x,
                                       const std::map<LieKey, NilCoeff>& y) {
  std::map<LieKey, NilCoeff> r;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) {
      LieElt b = g.bracket(LieElt(kx), LieElt(ky));
      if (b.is_zero()) continue;
      NilCoeff prod = cx * cy;
      for (const auto& [kb, q] : b.terms()) {
        NilCoeff t = prod;
        for (auto& p : t.part) p *= q;
        r[kb] += t;
      }
    }
  for (auto it = r.begin(); it != r.end();) {
    if (it->second.is_zero()) it = r.erase(it);
    else ++it;
  }
  return r;
}

}  // namespace

FlowEngine::FlowEngine(const LoopAlgebra& g, int max_degree) : g_(g), max_degree_(max_degree) {}

void FlowEngine::apply_exp(Dense& v, const GenIdx& jx, const Poly& /*x*/) const {
  const StructureConstants& sc = g_.sc();
  const Monomial xm = Monomial::of(jx);
  Dense term = v;
  for (int r = 1;; ++r) {
    Dense next(v.nmin, v.kcut, v.dim);
    const Q inv(1, r);
    bool any = false;
    for (int s = 0; s < static_cast<int>(term.j.size()); ++s) {
      const Poly& p = term.j[s];
      if (p.is_zero()) continue;
      GenIdx si = term.idx(s);
      const int n = si.n + jx.n;
      if (n < v.kcut) {
        for (const auto& [c, f] : sc.f(jx.label, si.label)) {
          add_trunc(next.j[next.slot(c, n)], p, f * inv, xm, max_degree_);
          any = true;
        }
      }
      if (n == 0 && jx.n != 0) {
        const Q& pr = sc.pairing(jx.label, si.label);
        if (pr != 0) {
          add_trunc(next.kc, p, pr * jx.n * inv, xm, max_degree_);
          any = true;
        }
      }
    }
    if (!term.dc.is_zero() && jx.n != 0 && v.in_range(jx.n)) {
      add_trunc(next.j[next.slot(jx.label, jx.n)], term.dc, Q(-jx.n) * inv, xm, max_degree_);
      any = true;
    }
    if (!any || next.is_zero()) break;
    for (size_t s = 0; s < v.j.size(); ++s)
      if (!next.j[s].is_zero()) v.j[s] += next.j[s];
    v.kc += next.kc;
    term = std::move(next);
  }
}

const std::vector<FlowEngine::Dense>& FlowEngine::thetas(int k) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = theta_cache_.find(k);
  if (it != theta_cache_.end()) return *it->second;
  const AffineData& ad = g_.data();
  std::vector<GenIdx> win = index_window(ad, k, Side::Plus);
  auto out = std::make_shared<std::vector<Dense>>();
  out->reserve(win.size());
  for (size_t t = 0; t < win.size(); ++t) {
    Dense v(0, k, ad.dim());
    v.j[v.slot(win[t].label, win[t].n)] = Poly(1);
    for (size_t u = t; u-- > 0;) apply_exp(v, win[u], Poly());
    out->push_back(std::move(v));
  }
  auto& ref = *out;
  theta_cache_.emplace(k, std::move(out));
  return ref;
}

PolyLie FlowEngine::adjoint(const LieElt& A, int k, int p) const {
  const AffineData& ad = g_.data();
  const int nmin = min_grade(A);
  Dense v(nmin, k, ad.dim());
  for (const auto& [key, c] : A.terms()) {
    if (key.kind == LieKey::K) v.kc += Poly(c);
    else if (key.kind == LieKey::D) v.dc += Poly(c);
    else if (key.idx.n < k) v.j[v.slot(key.idx.label, key.idx.n)] += Poly(c);
  }
  std::vector<GenIdx> win = index_window(ad, std::max(p, 1), Side::Plus);
  for (size_t u = win.size(); u-- > 0;) apply_exp(v, win[u], Poly());
  PolyLie out;
  for (size_t s = 0; s < v.j.size(); ++s)
    if (!v.j[s].is_zero()) out.emplace(LieKey{LieKey::J, v.idx(static_cast<int>(s))}, std::move(v.j[s]));
  if (!v.kc.is_zero()) out.emplace(LieKey::k(), std::move(v.kc));
  if (!v.dc.is_zero()) out.emplace(LieKey::d(), std::move(v.dc));
  return out;
}

PolyFamily FlowEngine::flow(const LieElt& A, int k, PolyLie* coset) const {
  if (k < 1) throw TruncationError("coordinate_flow: cutoff must be >= 1");
  PolyFamily P;
  if (coset) coset->clear();
  if (A.is_zero()) return P;
  const AffineData& ad = g_.data();
  const int p = k - min_grade(A);
  PolyLie v = adjoint(A, k, p);

  std::vector<GenIdx> win = index_window(ad, k, Side::Plus);
  const std::vector<Dense>& th = thetas(k);
  std::vector<size_t> order(win.size());
  for (size_t t = 0; t < order.size(); ++t) order[t] = t;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return ad.affine_height(win[a]) < ad.affine_height(win[b]); });

  for (size_t t : order) {
    auto it = v.find(LieKey{LieKey::J, win[t]});
    if (it == v.end() || it->second.is_zero()) continue;
    Poly pj = it->second;
    const Dense& theta = th[t];
    for (size_t s = 0; s < theta.j.size(); ++s) {
      const Poly& q = theta.j[s];
      if (q.is_zero()) continue;
      LieKey key{LieKey::J, theta.idx(static_cast<int>(s))};
      Poly prod = pj * q;
      if (max_degree_ >= 0) prod = prod.truncate_degree(max_degree_);
      Poly& dst = v[key];
      dst -= prod;
      if (dst.is_zero()) v.erase(key);
    }
    P.emplace(win[t], std::move(pj));
  }
  for (const auto& [key, q] : v) {
    if (key.kind == LieKey::J && ad.in_plus(key.idx) && !q.is_zero())
      throw AlgebraError("internal error: triangular solve left a plus-part residue");
    if (coset && !q.is_zero()) coset->emplace(key, q);
  }
  return P;
}

GroupWord FlowEngine::push_left(const GroupWord& w, const LieElt& A, NilCoeff::Part s) const {
  const int kout = w.truncation_k + min_grade(A);
  if (kout < 1)
    throw TruncationError("push_left: word truncation " + std::to_string(w.truncation_k) +
                          " is insufficient for a factor of t-grade " + std::to_string(min_grade(A)));
  GroupWord r;
  r.truncation_k = kout;
  for (const auto& [x, c] : w.factors)
    if (x.n < kout) r.factors.emplace(x, c);
  if (A.is_zero()) {
    r.coset = w.coset;
    return r;
  }
  PolyLie coset;
  PolyFamily P = flow(A, kout, &coset);
  auto xval = [&](const GenIdx& x) { return w.exponent(x); };
  const NilCoeff sym = NilCoeff::symbol(s);
  for (const auto& [x, p] : P) r.set(x, r.exponent(x) + sym * eval_nil(p, xval));
  std::map<LieKey, NilCoeff> cnew;
  for (const auto& [key, p] : coset) {
    NilCoeff c = sym * eval_nil(p, xval);
    if (!c.is_zero()) cnew[key] = c;
  }
  std::map<LieKey, NilCoeff> log = w.coset;
  for (const auto& [key, c] : cnew) log[key] += c;
  for (auto& [key, c] : nil_bracket(g_, w.coset, cnew)) {
    NilCoeff half = c;
    for (auto& p : half.part) p *= Q(1, 2);
    log[key] += half;
  }
  for (auto it = log.begin(); it != log.end();) {
    if (it->second.is_zero()) it = log.erase(it);
    else ++it;
  }
  r.coset = std::move(log);
  return r;
}

PolyFamily coordinate_flow(const LoopAlgebra& g, const LieElt& A, int k, int max_degree) {
  FlowEngine e(g, max_degree);
  return e.flow(A, k);
}

}  // namespace kmr

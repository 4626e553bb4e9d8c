#include "kmr/splitting.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace kmr {

namespace {

// coordinate of a D1State component, for assembling linear rows
struct Coord {
  int kind;  // 0 beta, 1 gamma, 2 S, 3 D, 4 b, 5 first product, 6 vacuum
  int a, b, n;
  Monomial m;
  bool operator<(const Coord& o) const {
    auto l = std::tie(kind, a, b, n), r = std::tie(o.kind, o.a, o.b, o.n);
    if (l != r) return l < r;
    return m < o.m;
  }
};

template <class F>
void flatten(const D1State& s, F&& put) {
  for (const auto& [mono, c] : s.vac.terms()) put(Coord{6, 0, 0, 0, mono}, c);
  for (const auto& [k, p] : s.beta)
    for (const auto& [mono, c] : p.terms()) put(Coord{0, k.label, 0, k.n, mono}, c);
  for (const auto& [k, p] : s.gamma.coeffs)
    for (const auto& [mono, c] : p.terms()) put(Coord{1, k.label, 0, k.n, mono}, c);
  for (const auto& [k, c] : s.s) put(Coord{2, k.a, k.b, k.n, Monomial()}, c);
  if (s.d != 0) put(Coord{3, 0, 0, 0, Monomial()}, s.d);
  for (const auto& [j, p] : s.b)
    for (const auto& [mono, c] : p.terms()) put(Coord{4, j, 0, 0, mono}, c);
}

template <class F>
void flatten_first(const Poly& p, F&& put) {
  for (const auto& [mono, c] : p.terms()) put(Coord{5, 0, 0, 0, mono}, c);
}

void restrict_keys(D1State& s, int bound) {
  for (auto it = s.beta.begin(); it != s.beta.end();) it = std::abs(it->first.n) > bound ? s.beta.erase(it) : std::next(it);
}

int height(const RootVec& r) { return std::accumulate(r.begin(), r.end(), 0); }

// Monomials in vars whose variables' weights sum to target.  Variables of
// t-grade 0 are positive roots; each variable of positive t-grade lowers the
// height by at most ht(theta), which bounds the exponents.
std::vector<Monomial> monomials_of_weight(const AffineData& ad, std::vector<GenIdx> vars, const AffWeight& target) {
  std::sort(vars.begin(), vars.end());
  int hmax = height(ad.theta);
  std::vector<AffWeight> w;
  for (const GenIdx& v : vars) w.push_back(ad.wgt(v));
  std::vector<std::uint32_t> exps(vars.size(), 0);
  std::vector<Monomial> out;
  std::function<void(std::size_t, AffWeight)> rec = [&](std::size_t i, AffWeight rem) {
    if (rem.delta < 0) return;
    if (i == vars.size()) {
      if (rem.delta != 0 || std::any_of(rem.fin.begin(), rem.fin.end(), [](int c) { return c != 0; })) return;
      Monomial m;
      for (std::size_t t = 0; t < vars.size(); ++t)
        if (exps[t]) m.push_back({var_code(vars[t]), exps[t]});
      out.push_back(m);
      return;
    }
    int emax = vars[i].n > 0 ? rem.delta / vars[i].n : std::max(0, height(rem.fin) + rem.delta * hmax);
    AffWeight r = rem;
    for (int e = 0; e <= emax; ++e) {
      exps[i] = static_cast<std::uint32_t>(e);
      rec(i + 1, r);
      for (std::size_t t = 0; t < r.fin.size(); ++t) r.fin[t] -= w[i].fin[t];
      r.delta -= w[i].delta;
    }
    exps[i] = 0;
  };
  rec(0, target);
  return out;
}

AffWeight negate(AffWeight w) {
  for (int& c : w.fin) c = -c;
  w.delta = -w.delta;
  return w;
}

AffWeight minus(AffWeight a, const AffWeight& b) {
  for (std::size_t t = 0; t < a.fin.size(); ++t) a.fin[t] -= b.fin[t];
  a.delta -= b.delta;
  return a;
}

// plus variables of t-grade <= n
std::vector<GenIdx> plus_vars(const AffineData& ad, int n) { return index_window(ad, n + 1, Side::Plus); }

D1State b_state(const std::map<int, Poly>& b) {
  D1State s;
  for (const auto& [j, p] : b)
    if (!p.is_zero()) s.b[j] += p;
  return s;
}

std::map<int, Poly> b_scalars(const std::map<int, Q>& c, const Poly& p = Poly(1)) {
  std::map<int, Poly> out;
  for (const auto& [j, v] : c)
    if (v != 0) out[j] = v * p;
  return out;
}

// Linear system assembled from residual templates: for each coordinate,
// sum_u row[u] x_u = rhs.
class RowBuilder {
 public:
  void base(const D1State& s, const Poly& first) {
    flatten(s, [&](const Coord& c, const Q& v) { cur_[c].second -= v; });
    flatten_first(first, [&](const Coord& c, const Q& v) { cur_[c].second -= v; });
  }
  void unknown(int u, const D1State& s, const Poly& first, const Q& scale = 1) {
    flatten(s, [&](const Coord& c, const Q& v) { cur_[c].first[u] += scale * v; });
    flatten_first(first, [&](const Coord& c, const Q& v) { cur_[c].first[u] += scale * v; });
  }
  void flush(LinearSystem& sys, const std::string& label) {
    for (auto& [c, rr] : cur_)
      if (sys.add_row(std::move(rr.first), rr.second)) labels.push_back(label);
    cur_.clear();
  }
  // solve, naming the offending pair on inconsistency
  LinearSolution solve_named(const LinearSystem& sys) const {
    try {
      return solve(sys);
    } catch (const InconsistentSystem& e) {
      std::string where = e.row() < labels.size() ? labels[e.row()] : "gauge";
      throw InconsistentSystem(std::string(e.what()) + " (" + where + ")", e.row());
    }
  }
  std::vector<std::string> labels;

 private:
  std::map<Coord, std::pair<SparseRow, Q>> cur_;
};

}  // namespace

Splitting::Splitting(const LoopAlgebra& g, int cutoff, int grade)
    : g_(g), k_(cutoff), G_(grade), real_(std::make_unique<Realization>(g, cutoff)) {
  if (cutoff < 2) throw AlgebraError("splitting: cutoff must be >= 2");
  if (grade < 0 || grade >= cutoff - 1) throw AlgebraError("splitting: generator grade must lie inside the window");
  for (int n = -G_; n <= G_; ++n)
    for (int a = 0; a < data().dim(); ++a) uprho_.emplace(GenIdx{a, n}, real_->uprho(LieElt::j(a, n)));
  d_image_ = real_->uprho(LieElt::d());
}

std::vector<LieKey> Splitting::generators() const {
  std::vector<LieKey> out;
  for (const auto& [x, img] : uprho_) out.push_back(LieKey{LieKey::J, x});
  out.push_back(LieKey::k());
  out.push_back(LieKey::d());
  return out;
}

const DgElement& Splitting::uprho(const GenIdx& x) const {
  auto it = uprho_.find(x);
  if (it == uprho_.end()) throw AlgebraError("splitting: generator " + genidx_str(data(), x) + " outside the window");
  return it->second;
}

DgElement Splitting::uprho(const LieElt& x) const {
  DgElement out;
  for (const auto& [key, c] : x.terms()) {
    DgElement t = key.kind == LieKey::J ? uprho(key.idx) : key.kind == LieKey::D ? d_image_ : DgElement();
    t *= c;
    out += t;
  }
  out.vf.window = d_image_.vf.window;
  return out;
}

LieElt Splitting::bracket(const LieKey& x, const LieKey& y) const { return g_.bracket(LieElt(x), LieElt(y)); }

bool Splitting::safe_pair(const LieKey& x, const LieKey& y) const {
  int nx = grade_of(x), ny = grade_of(y);
  return std::abs(nx) <= G_ && std::abs(ny) <= G_ && std::abs(nx + ny) <= G_;
}

int Splitting::key_bound(const LieKey& x, const LieKey& y) const {
  return k_ - 1 - std::max(std::abs(grade_of(x)), std::abs(grade_of(y)));
}

PhiMap Splitting::extend_phi(const PhiMap& minus) const {
  const AffineData& ad = data();
  PhiMap out;
  for (const auto& [x, w] : minus) {
    if (!ad.in_minus(x)) throw AlgebraError("extend_phi: " + genidx_str(ad, x) + " is not in n-");
    if (w.is_zero()) continue;
    out[x] = w;
    OneForm t = tau(g_.sc(), w);
    t *= Q(g_.sc().sigma_sign(x));
    out[ad.mirror(x)] = t;
  }
  return out;
}

OneForm Splitting::phi_of(const PhiMap& phi, const LieElt& x) const {
  OneForm out;
  for (const auto& [key, c] : x.terms()) {
    if (key.kind != LieKey::J) continue;
    auto it = phi.find(key.idx);
    if (it != phi.end()) out.add_scaled_form(it->second, c);
  }
  out.prune();
  return out;
}

D1State Splitting::theta(const LieElt& x, const PhiMap& phi) const {
  D1State s = D1State::from_dg(uprho(x));
  s += D1State::from_form(phi_of(phi, x));
  s.prune();
  return s;
}

SplittingReport Splitting::verify_images(const ImageFn& img,
                                         const std::function<bool(const LieKey&, const LieKey&)>& pair_filter) const {
  SplittingReport rep;
  std::vector<LieKey> gens = generators();
  std::map<LieKey, D1State> cache;
  auto image = [&](const LieKey& key) -> const D1State& {
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, img(key)).first;
    return it->second;
  };
  for (const LieKey& x : gens)
    for (const LieKey& y : gens) {
      if (!pair_filter(x, y)) {
        ++rep.pairs_skipped;
        continue;
      }
      ++rep.pairs_checked;
      PairResidual r{x, y, zero_product(image(x), image(y)), first_product(image(x), image(y))};
      for (const LieElt xy = bracket(x, y); const auto& [key, c] : xy.terms()) {
        D1State t = image(key);
        t *= c;
        r.zero -= t;
      }
      restrict_keys(r.zero, key_bound(x, y));
      r.zero.prune();
      if (!r.ok()) rep.failures.push_back(std::move(r));
    }
  return rep;
}

SplittingReport Splitting::verify(const PhiMap& phi) const {
  return verify_images([&](const LieKey& x) { return theta(x, phi); },
                       [&](const LieKey& x, const LieKey& y) { return safe_pair(x, y); });
}

std::vector<Unknown> Splitting::phi_unknowns(const GenIdx& x) const {
  const AffineData& ad = data();
  if (!ad.in_minus(x)) return {};
  std::vector<Unknown> out;
  std::vector<GenIdx> vars = plus_vars(ad, -x.n);
  for (const GenIdx& c : vars)
    for (const Monomial& m : monomials_of_weight(ad, vars, minus(negate(ad.wgt(x)), ad.wgt(c)))) out.push_back({x, c, -1, m});
  return out;
}

SolveReport Splitting::solve_phi(Gauge gauge) const {
  const AffineData& ad = data();
  SolveReport rep;
  // templates: generator -> (unknown, one-form)
  std::map<GenIdx, std::vector<std::pair<int, OneForm>>> tmpl;
  for (const auto& [x, img] : uprho_) {
    for (const Unknown& u : phi_unknowns(x)) {
      int id = static_cast<int>(rep.unknowns.size());
      rep.unknowns.push_back(u);
      OneForm w;
      w.add(u.c, Poly::monomial(u.m, 1));
      tmpl[x].emplace_back(id, w);
      OneForm t = tau(g_.sc(), w);
      t *= Q(g_.sc().sigma_sign(x));
      tmpl[ad.mirror(x)].emplace_back(id, t);
    }
  }
  LinearSystem sys(static_cast<int>(rep.unknowns.size()));
  RowBuilder rb;
  if (gauge == Gauge::ChevalleySerre) {
    std::map<int, Q> c = c_coefficients(g_, std::max(k_, 3)).extracted;
    for (int i = 0; i <= ad.rank; ++i) {
      GenIdx fi = ad.f_index(i), ei = ad.e_index(i);
      for (const auto& [id, w] : tmpl[fi]) {
        const Unknown& u = rep.unknowns[id];
        if (u.x != fi) continue;
        if (sys.add_row({{id, Q(1)}}, u.m.is_one() && u.c == ei ? c.at(i) : Q(0))) rb.labels.push_back("gauge");
      }
    }
  }
  auto forms_of = [&](const LieKey& key) -> const std::vector<std::pair<int, OneForm>>* {
    if (key.kind != LieKey::J) return nullptr;
    auto it = tmpl.find(key.idx);
    return it == tmpl.end() ? nullptr : &it->second;
  };
  std::map<LieKey, D1State> base;
  for (const LieKey& x : generators()) base.emplace(x, theta(x, {}));
  for (const LieKey& x : generators())
    for (const LieKey& y : generators()) {
      if (!safe_pair(x, y)) continue;
      int bound = key_bound(x, y);
      const D1State& bx = base.at(x);
      const D1State& by = base.at(y);
      LieElt xy = bracket(x, y);
      D1State z = zero_product(bx, by);
      for (const auto& [key, c] : xy.terms()) {
        D1State t = base.at(key);
        t *= c;
        z -= t;
      }
      restrict_keys(z, bound);
      rb.base(z, first_product(bx, by));
      if (auto* fx = forms_of(x))
        for (const auto& [id, w] : *fx) {
          D1State s = D1State::from_form(w);
          D1State t = zero_product(s, by);
          restrict_keys(t, bound);
          rb.unknown(id, t, first_product(s, by));
        }
      if (auto* fy = forms_of(y))
        for (const auto& [id, w] : *fy) {
          D1State s = D1State::from_form(w);
          D1State t = zero_product(bx, s);
          restrict_keys(t, bound);
          rb.unknown(id, t, first_product(bx, s));
        }
      for (const auto& [key, c] : xy.terms())
        if (auto* fz = forms_of(key))
          for (const auto& [id, w] : *fz) rb.unknown(id, D1State::from_form(w), Poly(), -c);
      rb.flush(sys, g_.render(LieElt(x)) + " , " + g_.render(LieElt(y)));
    }
  LinearSolution sol = rb.solve_named(sys);
  rep.rows = static_cast<int>(sys.rows());
  rep.rank = sol.rank;
  for (int f : sol.free_vars) rep.free.push_back(rep.unknowns[f]);
  PhiMap minus_part;
  for (std::size_t id = 0; id < rep.unknowns.size(); ++id) {
    if (sol.x[id] == 0) continue;
    const Unknown& u = rep.unknowns[id];
    minus_part[u.x].add(u.c, Poly::monomial(u.m, sol.x[id]));
  }
  rep.phi = extend_phi(minus_part);
  return rep;
}

std::map<int, Q> b_coords(const LoopAlgebra& g, const LieElt& x) {
  const AffineData& ad = g.data();
  std::map<int, Q> out;
  for (const auto& [key, c] : x.terms()) {
    int j;
    if (key.kind == LieKey::K) {
      j = ad.rank;
    } else if (key.kind == LieKey::D) {
      j = ad.rank + 1;
    } else if (key.idx.n == 0 && !ad.is_root(key.idx.label)) {
      j = ad.labels[key.idx.label].node - 1;
    } else {
      throw AlgebraError("b_coords: " + g.render(LieElt(key)) + " is not in the Cartan subalgebra");
    }
    out[j] += c;
    if (out[j] == 0) out.erase(j);
  }
  return out;
}

std::map<int, Poly> Splitting::b_terms_stated(const LieKey& x) const {
  const AffineData& ad = data();
  if (x.kind != LieKey::J || (x.idx.n == 0 && !ad.is_root(x.idx.label))) return b_scalars(b_coords(g_, LieElt(x)));
  for (int i = 0; i <= ad.rank; ++i) {
    if (x.idx == ad.e_index(i)) return b_scalars(b_coords(g_, g_.coroot(i)), Poly::var(ad.f_index(i)));
    if (x.idx == ad.f_index(i)) return b_scalars(b_coords(g_, g_.coroot(i)), Poly::var(ad.e_index(i)));
  }
  return {};
}

D1State Splitting::w_image(const LieKey& x, const PhiMap& phi, const std::map<GenIdx, std::map<int, Poly>>& blift,
                           LiftVariant v) const {
  const AffineData& ad = data();
  D1State s = theta(x, phi);
  if (v == LiftVariant::Stated) {
    s += b_state(b_terms_stated(x));
  } else if (x.kind != LieKey::J || (x.idx.n == 0 && !ad.is_root(x.idx.label))) {
    s += b_state(b_scalars(b_coords(g_, LieElt(x))));
  } else if (auto it = blift.find(x.idx); it != blift.end()) {
    s += b_state(it->second);
  }
  s.prune();
  return s;
}

SolveReport Splitting::solve_blift(const PhiMap& phi) const {
  const AffineData& ad = data();
  SolveReport rep;
  rep.phi = phi;
  int nb = bfield_count(ad);
  std::map<GenIdx, std::vector<std::pair<int, std::map<int, Poly>>>> tmpl;
  for (const auto& [x, img] : uprho_) {
    if (!ad.in_minus(x)) continue;
    for (const Monomial& m : monomials_of_weight(ad, plus_vars(ad, -x.n), negate(ad.wgt(x))))
      for (int j = 0; j < nb; ++j) {
        int id = static_cast<int>(rep.unknowns.size());
        rep.unknowns.push_back({x, GenIdx{}, j, m});
        tmpl[x].push_back({id, {{j, Poly::monomial(m, 1)}}});
      }
  }
  LinearSystem sys(static_cast<int>(rep.unknowns.size()));
  RowBuilder rb;
  // gauge: b-terms of the f_i as in the Chevalley-Serre images
  for (int i = 0; i <= ad.rank; ++i) {
    GenIdx fi = ad.f_index(i);
    auto it = tmpl.find(fi);
    if (it == tmpl.end()) continue;
    std::map<int, Poly> want = b_scalars(b_coords(g_, g_.coroot(i)), Poly::var(ad.e_index(i)));
    for (const auto& [id, b] : it->second) {
      const Unknown& u = rep.unknowns[id];
      auto w = want.find(u.b);
      if (sys.add_row({{id, Q(1)}}, w == want.end() ? Q(0) : w->second.coeff(u.m))) rb.labels.push_back("gauge");
    }
  }
  std::map<LieKey, D1State> base;
  for (const LieKey& x : generators()) base.emplace(x, w_image(x, phi, {}, LiftVariant::Corrected));
  auto bs_of = [&](const LieKey& key) -> const std::vector<std::pair<int, std::map<int, Poly>>>* {
    if (key.kind != LieKey::J) return nullptr;
    auto it = tmpl.find(key.idx);
    return it == tmpl.end() ? nullptr : &it->second;
  };
  for (const LieKey& x : generators())
    for (const LieKey& y : generators()) {
      if (!safe_pair(x, y)) continue;
      int bound = key_bound(x, y);
      const D1State& bx = base.at(x);
      const D1State& by = base.at(y);
      LieElt xy = bracket(x, y);
      D1State z = zero_product(bx, by);
      for (const auto& [key, c] : xy.terms()) {
        D1State t = base.at(key);
        t *= c;
        z -= t;
      }
      restrict_keys(z, bound);
      rb.base(z, first_product(bx, by));
      if (auto* tx = bs_of(x))
        for (const auto& [id, b] : *tx) {
          D1State t = zero_product(b_state(b), by);
          restrict_keys(t, bound);
          rb.unknown(id, t, Poly());
        }
      if (auto* ty = bs_of(y))
        for (const auto& [id, b] : *ty) {
          D1State t = zero_product(bx, b_state(b));
          restrict_keys(t, bound);
          rb.unknown(id, t, Poly());
        }
      for (const auto& [key, c] : xy.terms())
        if (auto* tz = bs_of(key))
          for (const auto& [id, b] : *tz) rb.unknown(id, b_state(b), Poly(), -c);
      rb.flush(sys, g_.render(LieElt(x)) + " , " + g_.render(LieElt(y)));
    }
  LinearSolution sol = rb.solve_named(sys);
  rep.rows = static_cast<int>(sys.rows());
  rep.rank = sol.rank;
  for (int f : sol.free_vars) rep.free.push_back(rep.unknowns[f]);
  for (std::size_t id = 0; id < rep.unknowns.size(); ++id) {
    if (sol.x[id] == 0) continue;
    const Unknown& u = rep.unknowns[id];
    rep.blift[u.x][u.b].add(u.m, sol.x[id]);
  }
  return rep;
}

SplittingReport Splitting::verify_w(const PhiMap& phi, LiftVariant v, const SolveReport* lift) const {
  std::map<GenIdx, std::map<int, Poly>> blift;
  if (v == LiftVariant::Corrected) blift = lift ? lift->blift : solve_blift(phi).blift;
  auto img = [&](const LieKey& x) { return w_image(x, phi, blift, v); };
  if (v == LiftVariant::Corrected)
    return verify_images(img, [&](const LieKey& x, const LieKey& y) { return safe_pair(x, y); });
  // the stated images are only given on the Chevalley-Serre generators, h, k and d
  const AffineData& ad = data();
  auto chevalley = [&](const LieKey& x) {
    if (x.kind != LieKey::J) return true;
    if (x.idx.n == 0 && !ad.is_root(x.idx.label)) return true;
    for (int i = 0; i <= ad.rank; ++i)
      if (x.idx == ad.e_index(i) || x.idx == ad.f_index(i)) return true;
    return false;
  };
  return verify_images(img, [&](const LieKey& x, const LieKey& y) {
    if (!safe_pair(x, y) || !chevalley(x) || !chevalley(y)) return false;
    for (const LieElt xy = bracket(x, y); const auto& [key, c] : xy.terms())
      if (!chevalley(key)) return false;
    return true;
  });
}

D1State vartheta_state(const Realization& R, const PhiMap& phi, const LieElt& x) {
  const AffineData& ad = R.algebra().data();
  D1State s;
  LieElt body;
  for (const auto& [key, c] : x.terms())
    if (key.kind != LieKey::K) body.add(key, c);
  if (!body.is_zero()) s.beta = R.rho(body).coeffs;
  for (const auto& [key, c] : x.terms()) {
    if (key.kind != LieKey::J || !ad.in_minus(key.idx)) continue;
    auto it = phi.find(key.idx);
    if (it != phi.end()) s.gamma.add_scaled_form(it->second, c);
  }
  s.prune();
  return s;
}

D1State Splitting::vartheta(const LieElt& x, const PhiMap& phi) const { return vartheta_state(*real_, phi, x); }

PairResidual Splitting::vartheta_check(const LieKey& x, const LieKey& y, const PhiMap& phi) const {
  if (!safe_pair(x, y))
    throw DivergenceError("vartheta_check: pair outside the certified window, the double contraction is not controlled");
  D1State vx = vartheta(LieElt(x), phi), vy = vartheta(LieElt(y), phi);
  PairResidual r{x, y, zero_product(vx, vy), Poly()};
  r.zero -= vartheta(bracket(x, y), phi);
  restrict_keys(r.zero, key_bound(x, y));
  r.zero.prune();
  return r;
}

StabilityReport Splitting::lpg_stabilize(const LieKey& x, const PhiMap& phi, Side side, int samples,
                                         std::mt19937_64& rng) const {
  const AffineData& ad = data();
  auto inside = [&](const GenIdx& v) { return side == Side::Plus ? ad.in_plus(v) : ad.in_minus(v); };
  std::vector<GenIdx> vars = index_window(ad, 2, side);
  StabilityReport rep;
  VAState a = theta(x, phi).to_state();
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  std::uniform_int_distribution<int> shape(0, 5);
  for (int t = 0; t < samples; ++t) {
    Word w;
    switch (shape(rng)) {
      case 0: w = {Sym::gamma(vars[pick(rng)], 0)}; break;
      case 1: w = {Sym::beta(vars[pick(rng)], -1)}; break;
      case 2: w = {Sym::gamma(vars[pick(rng)], -1)}; break;
      case 3: w = {Sym::gamma(vars[pick(rng)], 0), Sym::beta(vars[pick(rng)], -1)}; break;
      case 4: w = {Sym::gamma(vars[pick(rng)], 0), Sym::gamma(vars[pick(rng)], 0), Sym::gamma(vars[pick(rng)], -1)}; break;
      default: w = {Sym::beta(vars[pick(rng)], -1), Sym::beta(vars[pick(rng)], -1)}; break;
    }
    VAState v = VAState::of(w);
    ++rep.samples;
    for (int n = 0; n <= 2; ++n) {
      VAState out = nth_product(a, v, n);
      for (const auto& [word, c] : out.terms())
        for (const Sym& s : word) {
          bool free = s.kind == Sym::Gamma || s.kind == Sym::Beta;
          if (!free || !inside({s.a, s.n})) {
            rep.escapes.push_back("(" + std::to_string(n) + ") on " + render_word(ad, w, false) + ": " +
                                  render_word(ad, word, false));
            break;
          }
        }
    }
  }
  return rep;
}

std::map<int, Q> c_formula(const AffineData& ad) {
  std::map<int, Q> out;
  for (int i = 0; i <= ad.rank; ++i) {
    Q c = -2;
    for (int j = 0; j <= ad.rank; ++j)
      if (basis_cmp(ad.e_index(j), ad.e_index(i)) < 0) c += ad.cartan[i][j];
    out[i] = c;
  }
  return out;
}

CReport c_coefficients(const LoopAlgebra& g, int cutoff) {
  const AffineData& ad = g.data();
  Realization R(g, cutoff);
  CReport rep;
  rep.formula = c_formula(ad);
  for (int i = 0; i <= ad.rank; ++i) {
    GenIdx xi = ad.e_index(i);
    VarCode ci = var_code(xi);
    VectorField vf = R.rho(g.f(i));
    auto& inv = rep.inventory[i];
    for (const auto& [key, p] : vf.coeffs)
      for (const auto& [m, c] : p.terms()) {
        if (m.degree() != 2 || m.exponent(ci) == 0) continue;
        Monomial rest;
        m.diff(ci, rest);
        GenIdx other = var_idx(rest.factors().front().var);
        if (other == key) inv.push_back({key, other, c});
      }
    std::sort(inv.begin(), inv.end());
    auto& exp = rep.expected[i];
    exp.push_back({xi, xi, -1});
    for (int j = 0; j <= ad.rank; ++j) {
      if (!(basis_cmp(ad.e_index(j), xi) < 0) || ad.cartan[i][j] == 0) continue;
      LieElt br = g.bracket(g.e(i), g.e(j));
      GenIdx ij = br.terms().begin()->first.idx;
      exp.push_back({ij, ij, Q(ad.cartan[i][j])});
      exp.push_back({ad.e_index(j), ad.e_index(j), Q(-ad.cartan[i][j])});
    }
    std::sort(exp.begin(), exp.end());
    // <rho(h)_(1) rho(f_i)> against rho(h)(X^i) for a Cartan element with alpha_i(h) != 0
    for (int node = 1; node <= ad.rank; ++node) {
      LieElt h = LieElt::j(ad.cartan_label[node], 0);
      VectorField vh = R.rho(h);
      Q r = apply_vf(vh, Poly::var(xi)).coeff(Monomial::of(xi));
      if (r == 0) continue;
      Q s = double_contraction_scalar(vh, vf).coeff(Monomial::of(xi));
      rep.extracted[i] = -s / r;
      break;
    }
  }
  return rep;
}

std::string render(const AffineData& ad, const D1State& s, bool unicode) { return render(ad, s.to_state(), unicode); }

}  // namespace kmr

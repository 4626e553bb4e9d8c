#include "kmr/vertex.hpp"

#include <algorithm>
#include <sstream>

namespace kmr {

// ---------------------------------------------------------------- ZPoly

ZPoly ZPoly::monomial(int deg, const Q& c) {
  ZPoly r;
  if (c == 0) return r;
  r.c_.assign(deg + 1, Q(0));
  r.c_[deg] = c;
  return r;
}

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Q(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Q(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator*=(const Q& c) {
  if (c == 0) c_.clear();
  for (auto& x : c_) x *= c;
  return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Q(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  r.trim();
  return r;
}

std::string ZPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Q c = c_[i];
    bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
    if (mono.empty())
      out += q_str(c);
    else if (c == 1)
      out += mono;
    else
      out += q_str(c) + "*" + mono;
  }
  return out;
}

// ---------------------------------------------------------------- commutators

Commutator commutator(const Sym& x, const Sym& y) {
  Commutator r;
  if (x.kind == Sym::B || y.kind == Sym::B) return r;
  int mm = x.mode + y.mode;
  auto flip = [](Commutator c) {
    c.identity = -c.identity;
    for (auto& [s, q] : c.modes) q = -q;
    return c;
  };
  switch (x.kind) {
    case Sym::Beta:
      if (y.kind == Sym::Gamma) {
        // [beta_{a,n}[N], gamma^{b,m}[M]] = delta delta_{N,-M}
        if (x.a == y.a && x.n == y.n && x.mode == -y.mode) r.identity = 1;
        return r;
      }
      if (y.kind == Sym::Beta) return r;
      return flip(commutator(y, x));
    case Sym::Gamma:
      if (y.kind == Sym::Beta) return flip(commutator(y, x));
      if (y.kind == Sym::Gamma) return r;
      return flip(commutator(y, x));
    case Sym::S:
      if (y.kind == Sym::S) {
        // [S^a_{b,n}, S^c_{d,m}] = delta^c_b S^a_{d,n+m} - delta^a_d S^c_{b,n+m}
        if (y.a == x.b) r.modes.push_back({Sym::s(x.a, y.b, x.n + y.n, mm), Q(1)});
        if (x.a == y.b) r.modes.push_back({Sym::s(y.a, x.b, x.n + y.n, mm), Q(-1)});
        return r;
      }
      if (y.kind == Sym::Gamma) {
        if (y.a == x.b) r.modes.push_back({Sym::gamma({x.a, y.n - x.n}, mm), Q(1)});
        return r;
      }
      if (y.kind == Sym::Beta) {
        if (y.a == x.a) r.modes.push_back({Sym::beta({x.b, y.n + x.n}, mm), Q(-1)});
        return r;
      }
      return flip(commutator(y, x));  // D
    case Sym::D:
      if (y.kind == Sym::S) {
        if (y.n != 0) r.modes.push_back({Sym::s(y.a, y.b, y.n, mm), Q(y.n)});
        return r;
      }
      // D acts on gamma^{c,m} by -m and on beta_{c,m} by +m; the opposite
      // signs would violate the Jacobi identity with [D, S_n] = n S_n.
      if (y.kind == Sym::Gamma) {
        if (y.n != 0) r.modes.push_back({Sym::gamma(y.idx(), mm), Q(-y.n)});
        return r;
      }
      if (y.kind == Sym::Beta) {
        if (y.n != 0) r.modes.push_back({Sym::beta(y.idx(), mm), Q(y.n)});
        return r;
      }
      return r;
    case Sym::B:
      return r;
  }
  return r;
}

// ---------------------------------------------------------------- normal ordering

namespace {

using LC = std::map<Word, Q>;

void lc_add(LC& out, const Word& w, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = out.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

// x . (w[i..] |0>), with w[i..] canonical
LC insert(const Sym& x, const Word& w, size_t i) {
  LC out;
  if (i == w.size()) {
    if (!x.annihilates()) out[Word{x}] = 1;
    return out;
  }
  const Sym& y = w[i];
  if (!x.annihilates() && !(y < x)) {
    Word r;
    r.reserve(w.size() - i + 1);
    r.push_back(x);
    r.insert(r.end(), w.begin() + static_cast<long>(i), w.end());
    out[std::move(r)] = 1;
    return out;
  }
  // x y rest = y (x rest) + [x, y] rest
  for (const auto& [w1, c1] : insert(x, w, i + 1))
    for (const auto& [w2, c2] : insert(y, w1, 0)) lc_add(out, w2, c1 * c2);
  Commutator cm = commutator(x, y);
  if (cm.identity != 0) lc_add(out, Word(w.begin() + static_cast<long>(i) + 1, w.end()), cm.identity);
  for (const auto& [z, cz] : cm.modes)
    for (const auto& [w1, c1] : insert(z, w, i + 1)) lc_add(out, w1, cz * c1);
  return out;
}

Sym with_field_mode(Sym s, int j) {
  s.mode = s.kind == Sym::Gamma ? j + 1 : j;
  return s;
}

bool all_free(const Word& w) {
  return std::all_of(w.begin(), w.end(), [](const Sym& s) { return s.is_free(); });
}

// derivative order of a free creator
int deriv_order(const Sym& s) { return s.kind == Sym::Gamma ? -s.mode : -s.mode - 1; }
Sym with_deriv(Sym s, int p) {
  s.mode = s.kind == Sym::Gamma ? -p : -p - 1;
  return s;
}

}  // namespace

std::map<Word, Q> apply_sym(const Sym& x, const Word& w) { return insert(x, w, 0); }

VAState apply_sym(const Sym& x, const VAState& v) {
  VAState out;
  for (const auto& [w, c] : v.terms())
    for (const auto& [w2, c2] : insert(x, w, 0)) out.add(w2, c2 * c);
  return out;
}

// ---------------------------------------------------------------- VAState

VAState VAState::vacuum() {
  VAState v;
  v.t_[Word{}] = ZPoly(1);
  return v;
}

VAState VAState::of(const Word& w, const ZPoly& c) {
  VAState v;
  if (c.is_zero()) return v;
  v.t_[Word{}] = c;
  for (auto it = w.rbegin(); it != w.rend(); ++it) v = apply_sym(*it, v);
  return v;
}

void VAState::add(const Word& w, const ZPoly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

ZPoly VAState::coeff(const Word& w) const {
  auto it = t_.find(w);
  return it == t_.end() ? ZPoly() : it->second;
}

int word_depth(const Word& w) {
  int d = 0;
  for (const auto& s : w) d += s.depth();
  return d;
}

int VAState::depth() const {
  int d = -1;
  for (const auto& [w, c] : t_) d = std::max(d, word_depth(w));
  return d;
}

bool VAState::is_homogeneous_depth() const {
  int d = -1;
  for (const auto& [w, c] : t_) {
    if (d >= 0 && word_depth(w) != d) return false;
    d = word_depth(w);
  }
  return true;
}

bool VAState::is_regulated() const {
  return std::any_of(t_.begin(), t_.end(), [](const auto& t) { return !t.second.is_constant(); });
}

VAState& VAState::operator+=(const VAState& o) {
  for (const auto& [w, c] : o.t_) add(w, c);
  return *this;
}

VAState& VAState::operator-=(const VAState& o) {
  for (const auto& [w, c] : o.t_) add(w, Q(-1) * c);
  return *this;
}

VAState& VAState::operator*=(const ZPoly& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [w, v] : t_) v = v * c;
  return *this;
}

VAState VAState::constant_part() const {
  VAState r;
  for (const auto& [w, c] : t_) {
    Q s = 0;
    for (const auto& x : c.coeffs()) s += x;
    r.add(w, ZPoly(s));
  }
  return r;
}

// ---------------------------------------------------------------- translation

VAState translate(const VAState& a) {
  VAState out;
  for (const auto& [w, c] : a.terms()) {
    if (all_free(w)) {
      for (size_t i = 0; i < w.size(); ++i) {
        // [T, a_(n)] = -n a_(n-1)
        int n = w[i].field_mode();
        Word w2 = w;
        w2[i] = with_field_mode(w[i], n - 1);
        std::sort(w2.begin(), w2.end());
        out.add(w2, Q(-n) * c);
      }
      continue;
    }
    for (size_t i = 0; i < w.size(); ++i) {
      int n = w[i].field_mode();
      VAState v = VAState::vacuum();
      for (size_t j = w.size(); j-- > 0;) v = apply_sym(j == i ? with_field_mode(w[j], n - 1) : w[j], v);
      v *= Q(-n) * c;
      out += v;
    }
  }
  return out;
}

VAState translate_divided(const VAState& a, int j) {
  VAState v = a;
  for (int i = 1; i <= j; ++i) {
    v = translate(v);
    v *= ZPoly(Q(1, i));
  }
  return v;
}

// ---------------------------------------------------------------- mode oracle

namespace {

VAState word_mode(const Word& w, size_t start, int m, const VAState& b) {
  if (b.is_zero()) return {};
  if (start == w.size()) return m == -1 ? b : VAState();
  const Sym& s = w[start];
  int n = s.field_mode();
  int da = word_depth(Word(w.begin() + static_cast<long>(start) + 1, w.end()));
  int db = b.depth();
  VAState out;
  // (a_(n) A')_(m) = sum_j (-1)^j C(n,j) [ a_(n-j) A'_(m+j) - (-1)^n A'_(n+m-j) a_(j) ]
  for (int j = 0; m + j <= da + db - 1; ++j) {
    VAState inner = word_mode(w, start + 1, m + j, b);
    if (inner.is_zero()) continue;
    Q c = binom(n, j);
    if (j % 2) c = -c;
    VAState t = apply_sym(with_field_mode(s, n - j), inner);
    t *= ZPoly(c);
    out += t;
  }
  for (int j = 0; j <= db + 1; ++j) {
    VAState ab = apply_sym(with_field_mode(s, j), b);
    if (ab.is_zero()) continue;
    Q c = binom(n, j);
    if (j % 2) c = -c;
    if (n % 2 == 0) c = -c;
    VAState t = word_mode(w, start + 1, n + m - j, ab);
    t *= ZPoly(c);
    out += t;
  }
  return out;
}

}  // namespace

VAState mode_apply(const VAState& a, int m, const VAState& b) {
  VAState out;
  for (const auto& [w, c] : a.terms()) {
    VAState t = word_mode(w, 0, m, b);
    t *= c;
    out += t;
  }
  return out;
}

// ---------------------------------------------------------------- Wick

Q contraction_beta_gamma(int p, int q) {
  // d_u^{(p)} d_v^{(q)} 1/(u-v)
  Q c = binom(p + q, p);
  return p % 2 ? -c : c;
}

Q contraction_gamma_beta(int p, int q) { return -contraction_beta_gamma(p, q); }

namespace {

void wick_rec(const Word& wa, const Word& wb, size_t ia, std::vector<bool>& used_b, std::vector<bool>& used_a,
              int pole, ZPoly coeff, int n, const ProductOptions& opt, VAState& out) {
  if (ia == wa.size()) {
    int j = pole - n - 1;
    if (j < 0) return;
    Word ra, rb;
    for (size_t i = 0; i < wa.size(); ++i)
      if (!used_a[i]) ra.push_back(wa[i]);
    for (size_t i = 0; i < wb.size(); ++i)
      if (!used_b[i]) rb.push_back(wb[i]);
    // Taylor shift of the uncontracted left factors: T^(j) by Leibniz
    std::map<Word, Q> shifted;
    std::vector<int> dist(ra.size(), 0);
    auto distribute = [&](auto&& self, size_t pos, int left, Q c) -> void {
      if (pos == ra.size()) {
        if (left != 0) return;
        Word w = rb;
        for (size_t i = 0; i < ra.size(); ++i) w.push_back(with_deriv(ra[i], deriv_order(ra[i]) + dist[i]));
        std::sort(w.begin(), w.end());
        lc_add(shifted, w, c);
        return;
      }
      for (int t = 0; t <= left; ++t) {
        dist[pos] = t;
        int p = deriv_order(ra[pos]);
        self(self, pos + 1, left - t, c * binom(p + t, t));
      }
    };
    if (ra.empty()) {
      if (j != 0) return;
      Word w = rb;
      lc_add(shifted, w, Q(1));
    } else {
      distribute(distribute, 0, j, Q(1));
    }
    for (const auto& [w, c] : shifted) out.add(w, coeff * ZPoly(c));
    return;
  }
  // leave wa[ia] uncontracted
  wick_rec(wa, wb, ia + 1, used_b, used_a, pole, coeff, n, opt, out);
  const Sym& x = wa[ia];
  if (x.kind != Sym::Beta && x.kind != Sym::Gamma) return;
  for (size_t ib = 0; ib < wb.size(); ++ib) {
    if (used_b[ib]) continue;
    const Sym& y = wb[ib];
    if (y.a != x.a || y.n != x.n) continue;
    Q c;
    if (x.kind == Sym::Beta && y.kind == Sym::Gamma)
      c = contraction_beta_gamma(deriv_order(x), deriv_order(y));
    else if (x.kind == Sym::Gamma && y.kind == Sym::Beta)
      c = contraction_gamma_beta(deriv_order(x), deriv_order(y));
    else
      continue;
    ZPoly f = opt.regulator ? ZPoly::monomial(std::max(x.n, 0), c) : ZPoly(c);
    if (opt.regulator && x.n < 0) throw DivergenceError("regulator requires non-negative grades");
    used_b[ib] = true;
    used_a[ia] = true;
    wick_rec(wa, wb, ia + 1, used_b, used_a, pole + deriv_order(x) + deriv_order(y) + 1, coeff * f, n, opt, out);
    used_b[ib] = false;
    used_a[ia] = false;
  }
}

VAState wick_words(const Word& wa, const Word& wb, int n, const ProductOptions& opt) {
  VAState out;
  std::vector<bool> used_b(wb.size(), false), used_a(wa.size(), false);
  wick_rec(wa, wb, 0, used_b, used_a, 0, ZPoly(1), n, opt, out);
  return out;
}

// X[-k]|0> with X a current: (T^{(k-1)} X)_(N) = (-1)^{k-1} C(N, k-1) X_(N-k+1)
VAState current_product(const Sym& x, int n, const Word& wb) {
  int k = -x.mode;
  Q c = binom(n, k - 1);
  if ((k - 1) % 2) c = -c;
  VAState out;
  if (c == 0) return out;
  for (const auto& [w, cw] : apply_sym(with_field_mode(x, n - k + 1), wb)) out.add(w, ZPoly(c * cw));
  return out;
}

}  // namespace

VAState nth_product(const VAState& a, const VAState& b, int n, const ProductOptions& opt) {
  if (n < 0) throw std::invalid_argument("nth_product: N must be >= 0");
  VAState out;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      VAState t;
      if (all_free(wa) && all_free(wb)) {
        t = wick_words(wa, wb, n, opt);
      } else if (wa.size() == 1 && wa[0].is_current()) {
        t = current_product(wa[0], n, wb);
      } else if (wb.size() == 1 && wb[0].is_current()) {
        // skew-symmetry: A_(N) B = sum_j (-1)^{N+j+1} T^(j) (B_(N+j) A)
        VAState av;
        av.add(wa, ZPoly(1));
        int bound = word_depth(wa) + word_depth(wb);
        for (int j = 0; n + j <= bound; ++j) {
          VAState ba = current_product(wb[0], n + j, wa);
          if (ba.is_zero()) continue;
          VAState s = translate_divided(ba, j);
          s *= ZPoly((n + j + 1) % 2 ? Q(-1) : Q(1));
          t += s;
        }
      } else {
        if (opt.regulator) throw DivergenceError("regulated products are defined for free fields only");
        VAState av, bv;
        av.add(wa, ZPoly(1));
        bv.add(wb, ZPoly(1));
        t = mode_apply(av, n, bv);
      }
      t *= ca * cb;
      out += t;
    }
  return out;
}

// ---------------------------------------------------------------- rendering

int bfield_count(const AffineData& ad) { return ad.rank + 2; }

std::string bfield_name(const AffineData& ad, int i) {
  if (i < ad.rank) return ad.name(ad.cartan_label[i + 1]);
  return i == ad.rank ? "k" : "d";
}

std::string render_sym(const AffineData& ad, const Sym& s, bool unicode) {
  std::ostringstream os;
  switch (s.kind) {
    case Sym::Gamma:
      os << (unicode ? "γ" : "gamma") << "^{" << ad.name(s.a) << "," << s.n << "}";
      break;
    case Sym::Beta:
      os << (unicode ? "β" : "beta") << "_{" << ad.name(s.a) << "," << s.n << "}";
      break;
    case Sym::S:
      os << "S^" << ad.name(s.a) << "_{" << ad.name(s.b) << "," << s.n << "}";
      break;
    case Sym::D:
      os << "D";
      break;
    case Sym::B:
      os << "b_{" << bfield_name(ad, s.a) << "}";
      break;
  }
  os << "[" << s.mode << "]";
  return os.str();
}

std::string render_word(const AffineData& ad, const Word& w, bool unicode) {
  std::string out;
  for (const auto& s : w) out += render_sym(ad, s, unicode) + " ";
  return out + "|0>";
}

std::string render(const AffineData& ad, const VAState& v, bool unicode) {
  if (v.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : v.terms()) {
    std::string body = render_word(ad, w, unicode);
    if (c.is_constant()) {
      Q q = c.at(0);
      bool neg = q < 0;
      if (neg) q = -q;
      out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      if (q != 1) out += q_str(q) + "*";
    } else {
      out += out.empty() ? "" : " + ";
      out += "(" + c.str() + ")*";
    }
    out += body;
  }
  return out;
}

}  // namespace kmr

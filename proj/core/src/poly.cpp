#include "kmr/poly.hpp"

#include <boost/container_hash/hash.hpp>
#include <cctype>
#include <sstream>

namespace kmr {

Monomial Monomial::of(const GenIdx& x, std::uint32_t e) {
  Monomial m;
  if (e > 0) m.f_.push_back({var_code(x), e});
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& p : f_) d += p.exp;
  return d;
}

std::uint32_t Monomial::exponent(VarCode v) const {
  for (const auto& p : f_)
    if (p.var == v) return p.exp;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  auto a = f_.begin(), ae = f_.end();
  auto b = o.f_.begin(), be = o.f_.end();
  while (a != ae && b != be) {
    if (a->var < b->var) r.f_.push_back(*a++);
    else if (b->var < a->var) r.f_.push_back(*b++);
    else {
      r.f_.push_back({a->var, a->exp + b->exp});
      ++a;
      ++b;
    }
  }
  r.f_.insert(r.f_.end(), a, ae);
  r.f_.insert(r.f_.end(), b, be);
  return r;
}

std::uint32_t Monomial::diff(VarCode v, Monomial& out) const {
  for (std::size_t i = 0; i < f_.size(); ++i) {
    if (f_[i].var != v) continue;
    out = *this;
    if (f_[i].exp == 1) out.f_.erase(out.f_.begin() + static_cast<long>(i));
    else out.f_[i].exp -= 1;
    return f_[i].exp;
  }
  return 0;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0;
  for (const auto& p : f_) {
    boost::hash_combine(h, p.var);
    boost::hash_combine(h, p.exp);
  }
  return h;
}

void Poly::add(const Monomial& m, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

void Poly::add_scaled(const Poly& o, const Q& c) {
  if (c == 0) return;
  for (const auto& [m, v] : o.t_) add(m, v * c);
}

void Poly::add_scaled(const Poly& o, const Q& c, const Monomial& mm) {
  if (c == 0) return;
  for (const auto& [m, v] : o.t_) add(m * mm, v * c);
}

Q Poly::constant() const { return coeff(Monomial()); }

Q Poly::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Q(0) : it->second;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : t_) d = std::max(d, static_cast<int>(m.degree()));
  return d;
}

bool Poly::is_homogeneous_degree() const {
  int d = -1;
  for (const auto& [m, c] : t_) {
    if (d >= 0 && static_cast<int>(m.degree()) != d) return false;
    d = static_cast<int>(m.degree());
  }
  return true;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.t_) add(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.t_) add(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Q& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [m, v] : t_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) r.add(ma * mb, ca * cb);
  return r;
}

Poly Poly::diff(const GenIdx& x) const {
  Poly r;
  const VarCode v = var_code(x);
  Monomial red;
  for (const auto& [m, c] : t_) {
    std::uint32_t e = m.diff(v, red);
    if (e) r.add(red, c * e);
  }
  return r;
}

Poly Poly::truncate_degree(int max_degree) const {
  return filter([&](const Monomial& m) { return static_cast<int>(m.degree()) <= max_degree; });
}

std::set<GenIdx> Poly::variables() const {
  std::set<GenIdx> s;
  for (const auto& [m, c] : t_)
    for (const auto& p : m.factors()) s.insert(var_idx(p.var));
  return s;
}

Poly Poly::substitute(const std::function<Poly(const GenIdx&)>& f) const {
  std::map<VarCode, Poly> cache;
  Poly r;
  for (const auto& [m, c] : t_) {
    Poly term(c);
    for (const auto& p : m.factors()) {
      auto it = cache.find(p.var);
      if (it == cache.end()) it = cache.emplace(p.var, f(var_idx(p.var))).first;
      for (std::uint32_t e = 0; e < p.exp; ++e) term = term * it->second;
    }
    r += term;
  }
  return r;
}

Poly Poly::filter(const std::function<bool(const Monomial&)>& pred) const {
  Poly r;
  for (const auto& [m, c] : t_)
    if (pred(m)) r.t_.emplace_hint(r.t_.end(), m, c);
  return r;
}

AffWeight monomial_grade(const AffineData& ad, const Monomial& m) {
  AffWeight w{RootVec(ad.rank, 0), 0};
  for (const auto& p : m.factors()) {
    AffWeight x = ad.wgt(var_idx(p.var));
    for (int i = 0; i < ad.rank; ++i) w.fin[i] -= static_cast<int>(p.exp) * x.fin[i];
    w.delta -= static_cast<int>(p.exp) * x.delta;
  }
  return w;
}

namespace {

const Poly& zero_poly() {
  static const Poly z;
  return z;
}

template <class F>
void family_add(PolyFamily& fam, const GenIdx& c, const Poly& p, const Q& s) {
  if (p.is_zero() || s == 0) return;
  auto it = fam.find(c);
  if (it == fam.end()) {
    Poly q = p;
    if (s != 1) q *= s;
    fam.emplace(c, std::move(q));
    return;
  }
  it->second.add_scaled(p, s);
  if (it->second.is_zero()) fam.erase(it);
}

void family_prune(PolyFamily& fam) {
  for (auto it = fam.begin(); it != fam.end();) {
    if (it->second.is_zero()) it = fam.erase(it);
    else ++it;
  }
}

}  // namespace

void VectorField::add(const GenIdx& c, const Poly& p, const Q& s) { family_add<void>(coeffs, c, p, s); }
const Poly& VectorField::at(const GenIdx& c) const {
  auto it = coeffs.find(c);
  return it == coeffs.end() ? zero_poly() : it->second;
}
void VectorField::prune() { family_prune(coeffs); }
void VectorField::add_scaled_field(const VectorField& o, const Q& c) {
  for (const auto& [k, p] : o.coeffs) add(k, p, c);
}
VectorField& VectorField::operator+=(const VectorField& o) {
  for (const auto& [c, p] : o.coeffs) add(c, p);
  return *this;
}
VectorField& VectorField::operator-=(const VectorField& o) {
  for (const auto& [c, p] : o.coeffs) add(c, p, Q(-1));
  return *this;
}
VectorField& VectorField::operator*=(const Q& s) {
  for (auto& [c, p] : coeffs) p *= s;
  prune();
  return *this;
}

void OneForm::add(const GenIdx& c, const Poly& p, const Q& s) { family_add<void>(coeffs, c, p, s); }
const Poly& OneForm::at(const GenIdx& c) const {
  auto it = coeffs.find(c);
  return it == coeffs.end() ? zero_poly() : it->second;
}
void OneForm::prune() { family_prune(coeffs); }
void OneForm::add_scaled_form(const OneForm& o, const Q& c) {
  for (const auto& [k, p] : o.coeffs) add(k, p, c);
}
OneForm& OneForm::operator+=(const OneForm& o) {
  for (const auto& [c, p] : o.coeffs) add(c, p);
  return *this;
}
OneForm& OneForm::operator-=(const OneForm& o) {
  for (const auto& [c, p] : o.coeffs) add(c, p, Q(-1));
  return *this;
}
OneForm& OneForm::operator*=(const Q& s) {
  for (auto& [c, p] : coeffs) p *= s;
  prune();
  return *this;
}

Poly apply_derivation(const GenIdx& idx, const Poly& p) { return p.diff(idx); }

Poly apply_vf(const VectorField& v, const Poly& p) {
  Poly r;
  for (const GenIdx& x : p.variables()) {
    auto it = v.coeffs.find(x);
    if (it == v.coeffs.end()) continue;
    r += it->second * p.diff(x);
  }
  return r;
}

VectorField vf_bracket(const VectorField& v, const VectorField& w) {
  VectorField r;
  for (const auto& [a, q] : w.coeffs) r.add(a, apply_vf(v, q));
  for (const auto& [a, p] : v.coeffs) r.add(a, apply_vf(w, p), Q(-1));
  r.window.min_key = std::max(v.window.min_key, w.window.min_key);
  r.window.max_key = std::min(v.window.max_key, w.window.max_key);
  r.window.min_var = std::min(v.window.min_var, w.window.min_var);
  r.window.max_var = std::max(v.window.max_var, w.window.max_var);
  if (!v.coeffs.empty() && !w.coeffs.empty() && r.window.max_key < r.window.min_key && v.window.max_key >= v.window.min_key &&
      w.window.max_key >= w.window.min_key)
    throw AlgebraError("vf_bracket: windows are incompatible");
  return r;
}

Poly contract(const VectorField& v, const OneForm& w) {
  Poly r;
  for (const auto& [c, q] : w.coeffs) {
    auto it = v.coeffs.find(c);
    if (it != v.coeffs.end()) r += it->second * q;
  }
  return r;
}

OneForm exterior_d(const Poly& p) {
  OneForm r;
  for (const GenIdx& x : p.variables()) r.add(x, p.diff(x));
  return r;
}

OneForm lie_derivative(const VectorField& v, const OneForm& w) {
  // L_V (sum Q_c dX^c) = sum V(Q_c) dX^c + sum Q_c d(V^c)
  OneForm r;
  for (const auto& [c, q] : w.coeffs) {
    r.add(c, apply_vf(v, q));
    auto it = v.coeffs.find(c);
    if (it == v.coeffs.end()) continue;
    for (const GenIdx& x : it->second.variables()) r.add(x, q * it->second.diff(x));
  }
  return r;
}

OneForm contract_d(const VectorField& v, const OneForm& w) {
  OneForm r = lie_derivative(v, w);
  r -= exterior_d(contract(v, w));
  return r;
}

GapReport widening_gap_audit(const PolyFamily& family, int K) {
  GapReport rep;
  for (const auto& [key, p] : family) {
    const int bound = std::abs(key.n) - K;
    bool ok = true;
    for (const GenIdx& x : p.variables())
      if (std::abs(x.n) >= bound) {
        ok = false;
        break;
      }
    if (ok) {
      rep.pass.push_back(key);
    } else {
      rep.violations.push_back(key);
      rep.violations_by_grade[std::abs(key.n)] += 1;
      rep.max_violating_grade = std::max(rep.max_violating_grade, std::abs(key.n));
    }
  }
  return rep;
}

std::string render_var(const AffineData& ad, const GenIdx& x) { return "X^{" + genidx_str(ad, x) + "}"; }

std::string render_monomial(const AffineData& ad, const Monomial& m) {
  std::string s;
  for (const auto& p : m.factors()) {
    if (!s.empty()) s += "*";
    if (p.exp == 1) s += render_var(ad, var_idx(p.var));
    else s += "(" + render_var(ad, var_idx(p.var)) + ")^" + std::to_string(p.exp);
  }
  return s;
}

std::string render(const AffineData& ad, const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Q a = abs(c);
    s += (c < 0) ? (first ? "-" : " - ") : (first ? "" : " + ");
    if (m.is_one()) s += a.get_str();
    else if (a == 1) s += render_monomial(ad, m);
    else s += a.get_str() + "*" + render_monomial(ad, m);
    first = false;
  }
  return s;
}

std::string render(const AffineData& ad, const VectorField& v) {
  if (v.coeffs.empty()) return "0";
  std::string s;
  for (const auto& [c, p] : v.coeffs) {
    if (!s.empty()) s += "\n";
    s += "(" + render(ad, p) + ")*D_{" + genidx_str(ad, c) + "}";
  }
  return s;
}

std::string render(const AffineData& ad, const OneForm& w) {
  if (w.coeffs.empty()) return "0";
  std::string s;
  for (const auto& [c, p] : w.coeffs) {
    if (!s.empty()) s += "\n";
    s += "(" + render(ad, p) + ")*dX^{" + genidx_str(ad, c) + "}";
  }
  return s;
}

namespace {

class PolyParser {
 public:
  PolyParser(const AffineData& ad, const std::string& s) : ad_(ad), s_(s) {}

  Poly parse() {
    Poly r;
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
        skip();
      } else if (!first) {
        fail("expected + or -");
      }
      Q c;
      Monomial m;
      term(c, m);
      r.add(m, sign * c);
      first = false;
      skip();
    }
    return r;
  }

 private:
  void term(Q& c, Monomial& m) {
    c = 1;
    while (true) {
      skip();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        c *= number();
      } else if (peek() == 'X' || peek() == '(') {
        bool paren = peek() == '(';
        if (paren) {
          get();
          skip();
        }
        GenIdx x = variable();
        skip();
        if (paren) {
          expect(')');
          skip();
        }
        std::uint32_t e = 1;
        if (peek() == '^') {
          get();
          skip();
          e = static_cast<std::uint32_t>(number().get_num().get_ui());
        }
        m = m * Monomial::of(x, e);
      } else {
        fail("expected factor");
      }
      skip();
      if (peek() == '*') {
        get();
        continue;
      }
      break;
    }
  }

  GenIdx variable() {
    expect('X');
    expect('^');
    expect('{');
    std::size_t close = s_.find('}', pos_);
    if (close == std::string::npos) fail("unterminated variable");
    std::string body = s_.substr(pos_, close - pos_);
    pos_ = close + 1;
    std::size_t comma = body.rfind(',');
    if (comma == std::string::npos) fail("variable needs label,grade");
    return {ad_.label_of(body.substr(0, comma)), std::stoi(body.substr(comma + 1))};
  }

  Q number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
    if (start == pos_) fail("expected number");
    return q_parse(s_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw AlgebraError("parse_poly: " + msg + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  const AffineData& ad_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const AffineData& ad, const std::string& s) { return PolyParser(ad, s).parse(); }

}  // namespace kmr

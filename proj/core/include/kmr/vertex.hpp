#ifndef KMR_VERTEX_HPP
#define KMR_VERTEX_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmr/kacmoody_data.hpp"
#include "kmr/rational.hpp"

namespace kmr {

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Polynomial in the regulator z with rational coefficients.
class ZPoly {
 public:
  ZPoly() = default;
  ZPoly(const Q& c) { if (c != 0) c_.push_back(c); }  // NOLINT(google-explicit-constructor)
  ZPoly(int c) : ZPoly(Q(c)) {}                       // NOLINT(google-explicit-constructor)
  static ZPoly monomial(int deg, const Q& c);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Q at(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Q(0); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Q>& coeffs() const { return c_; }

  ZPoly& operator+=(const ZPoly& o);
  ZPoly& operator-=(const ZPoly& o);
  ZPoly& operator*=(const Q& c);
  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const Q& c, ZPoly a) { return a *= c; }
  bool operator==(const ZPoly&) const = default;
  std::string str() const;

 private:
  void trim();
  std::vector<Q> c_;
};

// One creation or annihilation mode.
//   Gamma: gamma^{a,n}[mode]     Beta: beta_{a,n}[mode]
//   S: S^a_{b,n}[mode]           D: D[mode]           B: b_a[mode] (a indexes the Cartan basis copy)
struct Sym {
  enum Kind : int { S = 0, D = 1, Gamma = 2, Beta = 3, B = 4 };
  Kind kind = Gamma;
  int mode = 0;
  int a = 0;
  int b = 0;
  int n = 0;

  static Sym gamma(const GenIdx& x, int mode) { return {Gamma, mode, x.label, 0, x.n}; }
  static Sym beta(const GenIdx& x, int mode) { return {Beta, mode, x.label, 0, x.n}; }
  static Sym s(int a, int b, int n, int mode) { return {S, mode, a, b, n}; }
  static Sym d(int mode) { return {D, mode, 0, 0, 0}; }
  static Sym bfield(int i, int mode) { return {B, mode, i, 0, 0}; }

  GenIdx idx() const { return {a, n}; }
  bool is_current() const { return kind == S || kind == D; }
  bool is_free() const { return !is_current(); }
  // kills the vacuum
  bool annihilates() const { return kind == Gamma ? mode >= 1 : mode >= 0; }
  // field-mode index j with the symbol equal to the coefficient of x^{-j-1}
  int field_mode() const { return kind == Gamma ? mode - 1 : mode; }
  // contribution to the depth grade
  int depth() const { return -mode; }
  // canonical order: currents first, then gamma, beta, b
  auto operator<=>(const Sym& o) const {
    if (kind != o.kind) return kind <=> o.kind;
    if (mode != o.mode) return o.mode <=> mode;
    if (n != o.n) return n <=> o.n;
    if (a != o.a) return a <=> o.a;
    return b <=> o.b;
  }
  bool operator==(const Sym&) const = default;
};

using Word = std::vector<Sym>;  // s_1 s_2 ... s_r |0>, sorted

// [x, y] as a combination of single modes plus an identity coefficient
struct Commutator {
  Q identity = 0;
  std::vector<std::pair<Sym, Q>> modes;
};
Commutator commutator(const Sym& x, const Sym& y);

class VAState {
 public:
  using Terms = std::map<Word, ZPoly>;
  VAState() = default;
  static VAState vacuum();
  static VAState of(const Word& w, const ZPoly& c = ZPoly(1));  // w is normal-ordered on insertion

  void add(const Word& w, const ZPoly& c);  // w must already be canonical
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  ZPoly coeff(const Word& w) const;
  // max depth over terms, -1 for zero
  int depth() const;
  bool is_homogeneous_depth() const;
  bool is_regulated() const;

  VAState& operator+=(const VAState& o);
  VAState& operator-=(const VAState& o);
  VAState& operator*=(const ZPoly& c);
  friend VAState operator+(VAState a, const VAState& b) { return a += b; }
  friend VAState operator-(VAState a, const VAState& b) { return a -= b; }
  friend VAState operator*(const ZPoly& c, VAState a) { return a *= c; }
  bool operator==(const VAState&) const = default;

  // evaluate the regulator at z = 1 (only valid when every coefficient is constant)
  VAState constant_part() const;

 private:
  Terms t_;
};

int word_depth(const Word& w);

// x applied to w|0>, normal-ordered
std::map<Word, Q> apply_sym(const Sym& x, const Word& w);
VAState apply_sym(const Sym& x, const VAState& v);

// Translation operator T.
VAState translate(const VAState& a);
// T^j / j!
VAState translate_divided(const VAState& a, int j);

// A_(M) B by composing the modes of the generating fields (brute-force oracle).
VAState mode_apply(const VAState& a, int m, const VAState& b);

struct ProductOptions {
  bool regulator = false;  // weight every beta/gamma pairing of grade n by z^n
};

// A_(N) B from the Wick expansion (free fields) and the current OPEs (S, D).
// Terms outside these shapes fall back to mode_apply.
VAState nth_product(const VAState& a, const VAState& b, int n, const ProductOptions& opt = {});

// Coefficient sign and binomial for a single contraction of derivative fields
// phi^{(p)}(u) psi^{(q)}(v) -> c / (u - v)^{p+q+1}; returns c.
Q contraction_beta_gamma(int p, int q);
Q contraction_gamma_beta(int p, int q);

// Text rendering, e.g. "gamma^{E,0}[0] beta_{H,1}[-1] |0>" in ASCII or with Greek letters.
std::string render_sym(const AffineData& ad, const Sym& s, bool unicode = true);
std::string render_word(const AffineData& ad, const Word& w, bool unicode = true);
std::string render(const AffineData& ad, const VAState& v, bool unicode = true);

// Names for the b_i fields: H_1..H_l, k, d.
std::string bfield_name(const AffineData& ad, int i);
int bfield_count(const AffineData& ad);

}  // namespace kmr

#endif

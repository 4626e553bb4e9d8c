#ifndef KMR_POLY_HPP
#define KMR_POLY_HPP

#include <algorithm>
#include <boost/container/small_vector.hpp>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kmr/kacmoody_data.hpp"
#include "kmr/rational.hpp"

namespace kmr {

// Variables X^{a,n} are packed so that integer order equals basis order.
using VarCode = std::uint32_t;
constexpr int kGradeOffset = 1 << 14;

inline VarCode var_code(const GenIdx& x) {
  return (static_cast<VarCode>(x.n + kGradeOffset) << 8) | static_cast<VarCode>(x.label);
}
inline GenIdx var_idx(VarCode c) { return {static_cast<int>(c & 0xFF), static_cast<int>(c >> 8) - kGradeOffset}; }

struct VarPow {
  VarCode var;
  std::uint32_t exp;
  auto operator<=>(const VarPow&) const = default;
  bool operator==(const VarPow&) const = default;
};

class Monomial {
 public:
  Monomial() = default;
  static Monomial of(const GenIdx& x, std::uint32_t e = 1);
  const auto& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  std::uint32_t degree() const;
  std::uint32_t exponent(VarCode v) const;
  Monomial operator*(const Monomial& o) const;
  // derivative with respect to v: returns exponent (0 if absent) and the reduced monomial
  std::uint32_t diff(VarCode v, Monomial& out) const;
  std::strong_ordering operator<=>(const Monomial& o) const {
    return std::lexicographical_compare_three_way(f_.begin(), f_.end(), o.f_.begin(), o.f_.end());
  }
  bool operator==(const Monomial& o) const { return f_ == o.f_; }
  void push_back(VarPow p) { f_.push_back(p); }
  std::size_t hash() const;

 private:
  boost::container::small_vector<VarPow, 4> f_;
};

class Poly {
 public:
  using Terms = std::map<Monomial, Q>;
  Poly() = default;
  Poly(const Q& c) { add(Monomial(), c); }  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Q(c)) {}               // NOLINT(google-explicit-constructor)
  static Poly var(const GenIdx& x) {
    Poly p;
    p.add(Monomial::of(x), Q(1));
    return p;
  }
  static Poly monomial(const Monomial& m, const Q& c) {
    Poly p;
    p.add(m, c);
    return p;
  }

  void add(const Monomial& m, const Q& c);
  void add_scaled(const Poly& o, const Q& c);
  void add_scaled(const Poly& o, const Q& c, const Monomial& m);
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  Q constant() const;
  Q coeff(const Monomial& m) const;
  int degree() const;  // -1 for zero
  bool is_homogeneous_degree() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Q& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Q(-1); }
  friend Poly operator*(const Q& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly&) const = default;

  Poly diff(const GenIdx& x) const;
  Poly truncate_degree(int max_degree) const;
  // variables that occur
  std::set<GenIdx> variables() const;
  // apply f to every variable: each X^v is replaced by the polynomial f(v)
  Poly substitute(const std::function<Poly(const GenIdx&)>& f) const;
  // keep only monomials accepted by pred
  Poly filter(const std::function<bool(const Monomial&)>& pred) const;

 private:
  Terms t_;
};

// Q-grade of a monomial: X^{a,n} has grade -wgt(a,n)
AffWeight monomial_grade(const AffineData& ad, const Monomial& m);

// Truncation certificate: keys with t-grade in [min_key, max_key] are exact and
// only involve variables with t-grade in [min_var, max_var].
struct Window {
  int min_key = 0;
  int max_key = -1;
  int min_var = 0;
  int max_var = -1;
  bool contains_key(int n) const { return n >= min_key && n <= max_key; }
};

using PolyFamily = std::map<GenIdx, Poly>;

struct VectorField {
  PolyFamily coeffs;  // sum coeffs[c] D_c
  Window window;
  void add(const GenIdx& c, const Poly& p, const Q& s = 1);
  const Poly& at(const GenIdx& c) const;
  bool is_zero() const { return coeffs.empty(); }
  void prune();
  void add_scaled_field(const VectorField& o, const Q& c);
  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(const Q& c);
};

struct OneForm {
  PolyFamily coeffs;  // sum coeffs[c] dX^c
  void add(const GenIdx& c, const Poly& p, const Q& s = 1);
  const Poly& at(const GenIdx& c) const;
  bool is_zero() const { return coeffs.empty(); }
  void prune();
  void add_scaled_form(const OneForm& o, const Q& c);
  OneForm& operator+=(const OneForm& o);
  OneForm& operator-=(const OneForm& o);
  OneForm& operator*=(const Q& c);
  bool operator==(const OneForm& o) const { return coeffs == o.coeffs; }
};

Poly apply_derivation(const GenIdx& idx, const Poly& p);
// V(p) = sum_c V^c dp/dX^c
Poly apply_vf(const VectorField& v, const Poly& p);
VectorField vf_bracket(const VectorField& v, const VectorField& w);
// Lie derivative and contraction of one-forms
OneForm lie_derivative(const VectorField& v, const OneForm& w);
Poly contract(const VectorField& v, const OneForm& w);
OneForm exterior_d(const Poly& p);
// (d w)(V, ...) contracted: iota_V d w = L_V w - d(iota_V w)
OneForm contract_d(const VectorField& v, const OneForm& w);

struct GapReport {
  std::vector<GenIdx> pass;
  std::vector<GenIdx> violations;
  std::map<int, int> violations_by_grade;  // |n| -> count
  int max_violating_grade = -1;            // measured B(K); -1 when there are none
};

GapReport widening_gap_audit(const PolyFamily& family, int K);

// Text rendering in the usual notation, e.g. "2*X^{H,1} - (X^{F,1})^2"
std::string render_var(const AffineData& ad, const GenIdx& x);
std::string render_monomial(const AffineData& ad, const Monomial& m);
std::string render(const AffineData& ad, const Poly& p);
std::string render(const AffineData& ad, const VectorField& v);
std::string render(const AffineData& ad, const OneForm& w);
Poly parse_poly(const AffineData& ad, const std::string& s);

}  // namespace kmr

#endif

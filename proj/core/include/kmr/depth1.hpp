#ifndef KMR_DEPTH1_HPP
#define KMR_DEPTH1_HPP

#include <map>

#include "kmr/realization.hpp"
#include "kmr/vertex.hpp"

namespace kmr {

// A state of depth <= 1 with polynomial coefficients in gamma[0]:
//   vac |0> + sum P^c beta_c[-1]|0> + sum Q_c gamma^c[-1]|0> + sum s S[-1]|0> + d D[-1]|0> + sum B_j b_j[-1]|0>
struct D1State {
  Poly vac;
  PolyFamily beta;
  OneForm gamma;
  std::map<SKey, Q> s;
  Q d = 0;
  std::map<int, Poly> b;

  static D1State from_dg(const DgElement& x);  // jmath
  static D1State from_form(const OneForm& w);

  bool is_zero() const;
  void prune();
  DgElement dg_part() const;
  D1State& operator+=(const D1State& o);
  D1State& operator-=(const D1State& o);
  D1State& operator*=(const Q& c);
  friend D1State operator+(D1State a, const D1State& b) { return a += b; }
  friend D1State operator-(D1State a, const D1State& b) { return a -= b; }
  bool operator==(const D1State& o) const;

  VAState to_state() const;
};

// A_(0) B and A_(1) B for states of depth exactly one (vac parts must vanish).
D1State zero_product(const D1State& a, const D1State& b);
Poly first_product(const D1State& a, const D1State& b);
// 1st product with each beta/gamma pairing of grade n weighted by z^n; key = power of z
std::map<int, Poly> first_product_regulated(const D1State& a, const D1State& b);
// the double-contraction bilinear map on vector fields: - sum (d D_b P^a)(D_a Q^b)
OneForm double_contraction_form(const VectorField& x, const VectorField& y);
Poly double_contraction_scalar(const VectorField& x, const VectorField& y);

// omega(A[K], B[L]) = -K (sum dP/dg . dQ/dg |0>)[K+L-1] - (sum [T, dP/dg] dQ/dg |0>)[K+L]
struct OmegaValue {
  int scalar_mode = 0;
  Poly scalar;  // coefficient state in O, placed at mode K+L-1
  int form_mode = 0;
  OneForm form;  // coefficient state in Omega, placed at mode K+L
  bool operator==(const OmegaValue& o) const {
    return scalar == o.scalar && form == o.form && (scalar.is_zero() || scalar_mode == o.scalar_mode) &&
           (form.is_zero() || form_mode == o.form_mode);
  }
};
// From the vector-field parts only, as in the formula above.
OmegaValue omega_cocycle(const DgElement& a, int k, const DgElement& b, int l);
// From the full products: the non-D(g) part of [A[K], B[L]] computed by the
// commutator formula (includes S-field terms).
OmegaValue omega_from_products(const DgElement& a, int k, const DgElement& b, int l);

}  // namespace kmr

#endif

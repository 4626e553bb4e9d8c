#ifndef KMR_ZETA_HPP
#define KMR_ZETA_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kmr/splitting.hpp"

namespace kmr {

class ZetaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// p(z) / q(z), coefficient lists from degree 0; q(0) = 1 after normalization
struct RationalFunction {
  std::vector<Q> num;
  std::vector<Q> den{Q(1)};

  std::vector<Q> expand(int terms) const;
  std::string str() const;
  bool operator==(const RationalFunction&) const = default;
};

struct RationalSeries {
  std::vector<Q> coeffs;  // prefix of a power series in z
  std::optional<RationalFunction> reconstructed;
  int certificate = 0;  // prefix terms matched beyond the degree bounds

  std::string str() const;  // e.g. "-4 - 4*z^2 - 4*z^4 + O(z^6)"
};

// vartheta(x)_(1) vartheta(y) with z^n per pairing of grade n, vacuum coefficient,
// exact for the first `terms` powers of z.
RationalSeries regulated_first_product(const LoopAlgebra& g, const PhiMap& phi, const LieElt& x, const LieElt& y,
                                       int terms);

// Pade fit with deg p <= max_num, deg q <= max_den (defaults: prefix length / 2 - 1);
// the smallest fitting degrees win. Throws ZetaError("no fit within bounds").
RationalSeries reconstruct_rational(const RationalSeries& s, int max_num = -1, int max_den = -1);

// Constant term of the Laurent expansion in y of r(e^y).
Q zeta_constant_term(const RationalFunction& r, int max_pole_order = 16);

struct ZetaRow {
  LieElt x, y;
  RationalSeries series;
  Q constant;
};

// the four sl2 pairs of the regulator discussion
std::vector<std::pair<LieElt, LieElt>> default_zeta_pairs(const LoopAlgebra& g);
ZetaRow zeta_row(const LoopAlgebra& g, const PhiMap& phi, const LieElt& x, const LieElt& y, int terms);

}  // namespace kmr

#endif

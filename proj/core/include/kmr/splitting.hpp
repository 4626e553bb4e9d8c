#ifndef KMR_SPLITTING_HPP
#define KMR_SPLITTING_HPP

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "kmr/depth1.hpp"
#include "kmr/linsolve.hpp"

namespace kmr {

// phi on the loop generators J_{a,n}; absent entries are zero
using PhiMap = std::map<GenIdx, OneForm>;

struct PairResidual {
  LieKey x, y;
  D1State zero;  // theta(x)_(0) theta(y) - theta([x,y]) on the exact key range
  Poly first;    // theta(x)_(1) theta(y)
  bool ok() const { return zero.is_zero() && first.is_zero(); }
};

struct SplittingReport {
  int pairs_checked = 0;
  int pairs_skipped = 0;  // outside the safe subwindow
  std::vector<PairResidual> failures;
  bool ok() const { return failures.empty(); }
};

// One unknown coefficient: the monomial m times dX^c (or times b_j) in the image of x.
struct Unknown {
  GenIdx x;
  GenIdx c;  // one-form direction; unused for b-unknowns
  int b = -1;
  Monomial m;
};

struct SolveReport {
  PhiMap phi;                        // on n- and extended to n+ by tau
  std::map<GenIdx, std::map<int, Poly>> blift;  // b-components, for lift solves
  std::vector<Unknown> unknowns;
  std::vector<Unknown> free;         // unknowns left undetermined by the rows and the gauge
  int rows = 0;
  int rank = 0;
};

enum class Gauge { ChevalleySerre, None };
enum class LiftVariant { Stated, Corrected };

struct QuadTerm {
  GenIdx key;   // D_{a,n}
  GenIdx var;   // X^i X^{var}
  Q coeff;
  bool operator==(const QuadTerm&) const = default;
  bool operator<(const QuadTerm& o) const {
    if (key != o.key) return key < o.key;
    if (var != o.var) return var < o.var;
    return coeff < o.coeff;
  }
};

struct CReport {
  std::map<int, Q> extracted;  // from the double contraction of rho(h) and rho(f_i)
  std::map<int, Q> formula;    // -2 + sum_{j < i} a_ij
  std::map<int, std::vector<QuadTerm>> inventory;  // quadratic terms found in rho(f_i)
  std::map<int, std::vector<QuadTerm>> expected;   // the three families predicted for rho(f_i)
  bool ok() const { return extracted == formula && inventory == expected; }
};

struct StabilityReport {
  int samples = 0;
  std::vector<std::string> escapes;
  bool ok() const { return escapes.empty(); }
};

// Images of the affine algebra in depth-one states at cutoff k, with
// generators J_{a,n}, |n| <= G.
class Splitting {
 public:
  Splitting(const LoopAlgebra& g, int cutoff, int grade);

  const LoopAlgebra& algebra() const { return g_; }
  const AffineData& data() const { return g_.data(); }
  int cutoff() const { return k_; }
  int grade() const { return G_; }
  const Realization& realization() const { return *real_; }

  // J_{a,n} with |n| <= G, then k and d
  std::vector<LieKey> generators() const;
  const DgElement& uprho(const GenIdx& x) const;
  DgElement uprho(const LieElt& x) const;

  // x, y and [x,y] inside the generator window
  bool safe_pair(const LieKey& x, const LieKey& y) const;
  // largest |m| of a beta key that is exact in x_(0) y
  int key_bound(const LieKey& x, const LieKey& y) const;

  // fill the n+ entries from the n- ones by phi(sigma x) = tau(phi(x)); Cartan entries at t-grade 0 vanish
  PhiMap extend_phi(const PhiMap& minus) const;
  OneForm phi_of(const PhiMap& phi, const LieElt& x) const;

  D1State theta(const LieElt& x, const PhiMap& phi) const;
  D1State theta(const LieKey& x, const PhiMap& phi) const { return theta(LieElt(x), phi); }

  using ImageFn = std::function<D1State(const LieKey&)>;
  // residuals of an arbitrary assignment of images (extended linearly)
  SplittingReport verify_images(const ImageFn& img, const std::function<bool(const LieKey&, const LieKey&)>& pair_filter) const;
  SplittingReport verify(const PhiMap& phi) const;

  std::vector<Unknown> phi_unknowns(const GenIdx& x) const;
  SolveReport solve_phi(Gauge gauge = Gauge::ChevalleySerre) const;

  // theta plus the pi_0 terms
  std::map<int, Poly> b_terms_stated(const LieKey& x) const;
  SolveReport solve_blift(const PhiMap& phi) const;
  SplittingReport verify_w(const PhiMap& phi, LiftVariant v, const SolveReport* lift = nullptr) const;
  D1State w_image(const LieKey& x, const PhiMap& phi, const std::map<GenIdx, std::map<int, Poly>>& blift,
                  LiftVariant v) const;

  // plus-side images: i(rho(x)) + phi(x) for x in n-
  D1State vartheta(const LieElt& x, const PhiMap& phi) const;
  // vartheta(x)_(0) vartheta(y) - vartheta([x,y]) on the exact key range
  PairResidual vartheta_check(const LieKey& x, const LieKey& y, const PhiMap& phi) const;

  // theta(x)_(N) v stays in the plus (resp. minus) free-field subspace
  StabilityReport lpg_stabilize(const LieKey& x, const PhiMap& phi, Side side, int samples, std::mt19937_64& rng) const;

 private:
  LieElt bracket(const LieKey& x, const LieKey& y) const;
  int grade_of(const LieKey& x) const { return x.kind == LieKey::J ? x.idx.n : 0; }

  const LoopAlgebra& g_;
  int k_;
  int G_;
  std::unique_ptr<Realization> real_;
  std::map<GenIdx, DgElement> uprho_;
  DgElement d_image_;
};

// i(rho(x)) + phi(x) for the n- part of x, with rho taken from R
D1State vartheta_state(const Realization& R, const PhiMap& phi, const LieElt& x);

// <b^j, x> for x in the Cartan part plus k and d; b_0..b_{l-1} = H_i, b_l = k, b_{l+1} = d
std::map<int, Q> b_coords(const LoopAlgebra& g, const LieElt& x);

CReport c_coefficients(const LoopAlgebra& g, int cutoff);
// -2 + sum_{j < i} a_ij with < the basis order of the e_j
std::map<int, Q> c_formula(const AffineData& ad);

std::string render(const AffineData& ad, const D1State& s, bool unicode = false);

}  // namespace kmr

#endif

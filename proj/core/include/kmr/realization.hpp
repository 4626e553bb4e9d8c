#ifndef KMR_REALIZATION_HPP
#define KMR_REALIZATION_HPP

#include <map>
#include <random>

#include "kmr/bch.hpp"

namespace kmr {

// S^a_{b,n}
struct SKey {
  int a = 0;
  int b = 0;
  int n = 0;
  auto operator<=>(const SKey&) const = default;
};

// Element of D(g): widening-gap vector field plus abstract S and D parts.
struct DgElement {
  VectorField vf;
  std::map<SKey, Q> s;
  Q d = 0;

  void add_s(const SKey& k, const Q& c);
  bool is_zero() const { return vf.is_zero() && s.empty() && d == 0; }
  DgElement& operator+=(const DgElement& o);
  DgElement& operator-=(const DgElement& o);
  DgElement& operator*=(const Q& c);
};

// tau: X^{a,n} -> s X^{-a,-n}, D likewise, s the sign of sigma on J_{a,n}
Poly tau(const StructureConstants& sc, const Poly& p);
VectorField tau(const StructureConstants& sc, const VectorField& v);
OneForm tau(const StructureConstants& sc, const OneForm& w);

// the S-part of J_{a,n}: sum_{b,c} f_{ba}^c S^b_{c,n}
std::map<SKey, Q> s_image(const StructureConstants& sc, const LieElt& A);

// iota(S^a_{b,n}) = sum_m X^{a,m-n} D_{b,m}, materialized on keys |m| < k
VectorField iota_s(const SKey& s, int k);
// iota(D) = -sum_m m X^{c,m} D_{c,m} on keys |m| < k
VectorField iota_d(const AffineData& ad, int k);
// apply iota(S) / iota(D) to a polynomial exactly (no window needed)
Poly apply_iota_s(const SKey& s, const Poly& p);
Poly apply_iota_d(const Poly& p);
// apply the full element (vf + iota(S part) + d iota(D))
Poly apply_dg(const DgElement& x, const Poly& p);

// semidirect bracket in D(g); vf parts are exact only inside the reported window
DgElement dg_bracket(const DgElement& x, const DgElement& y);
// [iota(S), V] and [iota(D), V] as finite vector fields
VectorField s_action(const SKey& s, const VectorField& v);
VectorField d_action(const VectorField& v);

class Realization {
 public:
  Realization(const LoopAlgebra& g, int k, int max_degree = -1);

  const LoopAlgebra& algebra() const { return g_; }
  const FlowEngine& engine() const { return engine_; }
  int cutoff() const { return k_; }

  VectorField rho(const LieElt& A) const;
  // tau o rho o sigma
  VectorField rho_minus(const LieElt& A) const;
  VectorField jplus(int a, int n) const;
  PolyFamily rplus(int a, int n) const;
  DgElement uprho(const LieElt& A) const;
  PolyFamily r_polys(int a, int n) const;

 private:
  const LoopAlgebra& g_;
  int k_;
  FlowEngine engine_;
};

VectorField rho(const LoopAlgebra& g, const LieElt& A, int k);
VectorField jplus(const LoopAlgebra& g, int a, int n, int k);
PolyFamily rplus(const LoopAlgebra& g, int a, int n, int k);
DgElement uprho(const LoopAlgebra& g, const LieElt& A, int k);
PolyFamily r_polys(const LoopAlgebra& g, int a, int n, int k);

struct StabilizeReport {
  bool ok = true;
  int samples = 0;
  std::vector<std::string> escapes;  // rendered offending monomials
};

// Apply the element to random polynomials in plus (resp. minus) variables with
// |t-grade| < var_bound and check the result stays in the same subring.
StabilizeReport check_stabilizes(const LoopAlgebra& g, const DgElement& x, int var_bound, int samples,
                                 std::mt19937_64& rng);
bool check_stabilizes(const LoopAlgebra& g, const LieElt& A, int k);

}  // namespace kmr

#endif

#ifndef KMR_BCH_HPP
#define KMR_BCH_HPP

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "kmr/loopalg.hpp"
#include "kmr/poly.hpp"

namespace kmr {

class TruncationError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

// Loop-algebra element with polynomial coefficients.
using PolyLie = std::map<LieKey, Poly>;

// Element of Q[X] (x) Q[eps, eta]/(eps^2, eta^2); parts are 1, eps, eta, eps*eta.
struct NilCoeff {
  enum Part { One = 0, Eps = 1, Eta = 2, EpsEta = 3 };
  std::array<Poly, 4> part;

  NilCoeff() = default;
  NilCoeff(const Poly& p) { part[One] = p; }  // NOLINT(google-explicit-constructor)
  static NilCoeff symbol(Part s, const Poly& p = Poly(1)) {
    NilCoeff c;
    c.part[s] = p;
    return c;
  }
  bool is_zero() const;
  NilCoeff& operator+=(const NilCoeff& o);
  NilCoeff& operator-=(const NilCoeff& o);
  friend NilCoeff operator+(NilCoeff a, const NilCoeff& b) { return a += b; }
  friend NilCoeff operator-(NilCoeff a, const NilCoeff& b) { return a -= b; }
  friend NilCoeff operator*(const NilCoeff& a, const NilCoeff& b);
  bool operator==(const NilCoeff&) const = default;
};

NilCoeff eval_nil(const Poly& p, const std::function<NilCoeff(const GenIdx&)>& x);

// Ordered product Exp(coset) * prod_j exp(c_j J_j), factors sorted by basis order.
struct GroupWord {
  int truncation_k = 1;
  std::map<GenIdx, NilCoeff> factors;
  std::map<LieKey, NilCoeff> coset;  // logarithm of the coset factor in the minus part

  void set(const GenIdx& x, const NilCoeff& c);
  NilCoeff exponent(const GenIdx& x) const;
};

// prod over all (a,n) in the plus index set with n < k of exp(X^{a,n} J_{a,n})
GroupWord generic_word(const AffineData& ad, int k);
GroupWord pi_truncate(const GroupWord& w, int k);

class FlowEngine {
 public:
  explicit FlowEngine(const LoopAlgebra& g, int max_degree = -1);

  const LoopAlgebra& algebra() const { return g_; }
  int max_degree() const { return max_degree_; }

  // Coordinate flow P^{b,m}_A for (b,m) in the plus set with m < k.
  // If coset is given, receives the minus-part pi_-(Ad_g A).
  PolyFamily flow(const LieElt& A, int k, PolyLie* coset = nullptr) const;

  // Ad_g(A) for the generic word with factors up to grade p-1, terms of t-grade >= k dropped
  PolyLie adjoint(const LieElt& A, int k, int p) const;

  // w * exp(s A) rewritten in coset normal form
  GroupWord push_left(const GroupWord& w, const LieElt& A, NilCoeff::Part s) const;

 private:
  struct Dense;
  const std::vector<Dense>& thetas(int k) const;
  void apply_exp(Dense& v, const GenIdx& j, const Poly& x) const;

  const LoopAlgebra& g_;
  int max_degree_;
  mutable std::mutex mu_;
  mutable std::map<int, std::shared_ptr<std::vector<Dense>>> theta_cache_;
};

PolyFamily coordinate_flow(const LoopAlgebra& g, const LieElt& A, int k, int max_degree = -1);

}  // namespace kmr

#endif

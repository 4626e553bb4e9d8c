#ifndef KMR_LOOPALG_HPP
#define KMR_LOOPALG_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kmr/kacmoody_data.hpp"
#include "kmr/rational.hpp"

namespace kmr {

struct LieKey {
  enum Kind : int { J = 0, K = 1, D = 2 };
  Kind kind = J;
  GenIdx idx;
  static LieKey j(int label, int n) { return {J, {label, n}}; }
  static LieKey k() { return {K, {}}; }
  static LieKey d() { return {D, {}}; }
  auto operator<=>(const LieKey& o) const {
    if (kind != o.kind) return kind <=> o.kind;
    return idx <=> o.idx;
  }
  bool operator==(const LieKey&) const = default;
};

class LieElt {
 public:
  LieElt() = default;
  LieElt(const LieKey& key, const Q& c = 1) { add(key, c); }
  static LieElt j(int label, int n, const Q& c = 1) { return LieElt(LieKey::j(label, n), c); }
  static LieElt k() { return LieElt(LieKey::k()); }
  static LieElt d() { return LieElt(LieKey::d()); }

  void add(const LieKey& key, const Q& c);
  Q coeff(const LieKey& key) const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<LieKey, Q>& terms() const { return terms_; }

  LieElt& operator+=(const LieElt& o);
  LieElt& operator-=(const LieElt& o);
  LieElt& operator*=(const Q& c);
  friend LieElt operator+(LieElt a, const LieElt& b) { return a += b; }
  friend LieElt operator-(LieElt a, const LieElt& b) { return a -= b; }
  friend LieElt operator*(const Q& c, LieElt a) { return a *= c; }
  friend LieElt operator-(LieElt a) { return a *= Q(-1); }
  bool operator==(const LieElt&) const = default;

 private:
  std::map<LieKey, Q> terms_;
};

// Structure constants of the finite simple algebra in the Cartan-Weyl basis
// {E_alpha, H_i}.  Simply-laced types only; signs from the Frenkel-Kac cocycle.
class StructureConstants {
 public:
  explicit StructureConstants(const AffineData& ad);

  // [J_a, J_b] = sum_c f(a,b)[c] J_c
  const std::vector<std::pair<int, Q>>& f(int a, int b) const { return f_[a * dim_ + b]; }
  const Q& pairing(int a, int b) const { return pairing_[a * dim_ + b]; }
  // sign s with sigma(J_{a,n}) = s * J_{-a,-n}
  int sigma_sign(const GenIdx& x) const;
  int dim() const { return dim_; }
  const AffineData& data() const { return *ad_; }

 private:
  const AffineData* ad_;
  int dim_;
  std::vector<std::vector<std::pair<int, Q>>> f_;
  std::vector<Q> pairing_;
};

class LoopAlgebra {
 public:
  explicit LoopAlgebra(AffineData ad);
  LoopAlgebra(const LoopAlgebra&) = delete;
  LoopAlgebra& operator=(const LoopAlgebra&) = delete;

  const AffineData& data() const { return ad_; }
  const StructureConstants& sc() const { return sc_; }

  LieElt bracket(const LieElt& x, const LieElt& y) const;
  Q bilinear_form(const LieElt& x, const LieElt& y) const;
  LieElt cartan_sigma(const LieElt& x) const;

  LieElt e(int i) const;
  LieElt f(int i) const;
  LieElt coroot(int i) const;  // check alpha_i; check alpha_0 = k - theta^vee
  // "e0".."el", "f0".., "h0".., "k", "d", or "J(a,n)" / "a,n" with a a label name
  LieElt parse(const std::string& s) const;
  std::string render(const LieElt& x) const;

  // Q-grade (affine weight) of a homogeneous element; throws if inhomogeneous
  AffWeight weight(const LieElt& x) const;

 private:
  AffineData ad_;
  StructureConstants sc_;
};

// returns ad_x^n(y) for n = 1 - A_ij; used for Serre checks
LieElt ad_power(const LoopAlgebra& g, const LieElt& x, const LieElt& y, int n);

}  // namespace kmr

#endif

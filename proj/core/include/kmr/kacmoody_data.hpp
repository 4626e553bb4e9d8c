#ifndef KMR_KACMOODY_DATA_HPP
#define KMR_KACMOODY_DATA_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmr {

using IntMatrix = std::vector<std::vector<int>>;
using RootVec = std::vector<int>;  // coordinates over the finite simple roots

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Cartan-Weyl label of the finite algebra. Labels are numbered so that the
// numeric order equals the basis order inside one t-grade: negative roots,
// then Cartan generators, then positive roots.
struct LabelInfo {
  bool is_root = false;
  RootVec root;     // zero vector for Cartan labels
  int node = 0;     // 1..l for Cartan labels
  int height = 0;   // signed height, 0 for Cartan labels
  std::string name;
};

// (a, n): label a, t-grade n
struct GenIdx {
  int label = 0;
  int n = 0;
  auto operator<=>(const GenIdx& o) const {
    if (n != o.n) return n <=> o.n;
    return label <=> o.label;
  }
  bool operator==(const GenIdx&) const = default;
};

// Element of the affine root lattice written as finite part plus multiple of delta.
struct AffWeight {
  RootVec fin;
  int delta = 0;
  bool operator==(const AffWeight&) const = default;
  auto operator<=>(const AffWeight&) const = default;
};

enum class Side { Plus, Minus, Both };

struct AffineData {
  std::string tag;
  IntMatrix cartan;          // affine, nodes 0..l
  int rank = 0;              // l
  std::vector<int> marks;    // a_i
  std::vector<int> comarks;  // check a_i
  int coxeter = 0;
  int dual_coxeter = 0;
  std::vector<RootVec> positive_roots;  // sorted by the basis order (theta first)
  RootVec theta;

  std::vector<LabelInfo> labels;
  std::map<RootVec, int> root_label;
  std::vector<int> neg_label;  // label of -a (Cartan labels map to themselves)
  std::vector<int> cartan_label;  // cartan_label[i] for i = 1..l (index 0 unused)

  int dim() const { return static_cast<int>(labels.size()); }
  bool is_root(int label) const { return labels[label].is_root; }
  bool is_positive_root(int label) const { return labels[label].is_root && labels[label].height > 0; }
  const std::string& name(int label) const { return labels[label].name; }
  int label_of(const std::string& name) const;  // throws on unknown name

  bool in_plus(const GenIdx& x) const { return x.n >= 1 || (x.n == 0 && is_positive_root(x.label)); }
  bool in_minus(const GenIdx& x) const { return x.n <= -1 || (x.n == 0 && is_root(x.label) && !is_positive_root(x.label)); }
  GenIdx mirror(const GenIdx& x) const { return {neg_label[x.label], -x.n}; }

  AffWeight wgt(const GenIdx& x) const;
  // affine height of wgt(x): ht(a) + n * h
  int affine_height(const GenIdx& x) const;
  // label and grade of the Chevalley generator e_i (i = 0..l)
  GenIdx e_index(int i) const;
  GenIdx f_index(int i) const;
};

AffineData build_affine_data(const std::string& tag);
AffineData build_affine_data(const IntMatrix& cartan, const std::string& tag = "custom");

std::strong_ordering basis_cmp(const GenIdx& x, const GenIdx& y);

std::vector<GenIdx> index_window(const AffineData& ad, int k, Side side);

std::string genidx_str(const AffineData& ad, const GenIdx& x);

}  // namespace kmr

#endif

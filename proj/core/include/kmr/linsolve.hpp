#ifndef KMR_LINSOLVE_HPP
#define KMR_LINSOLVE_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmr/rational.hpp"

namespace kmr {

class InconsistentSystem : public std::runtime_error {
 public:
  InconsistentSystem(const std::string& what, std::size_t row) : std::runtime_error(what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

using SparseRow = std::map<int, Q>;

// Sparse linear system sum_j a_ij x_j = b_i over Q.
class LinearSystem {
 public:
  explicit LinearSystem(int nvars = 0) : n_(nvars) {}
  int vars() const { return n_; }
  int add_var() { return n_++; }
  // returns false for a trivial row 0 = 0, which is dropped
  bool add_row(SparseRow row, const Q& rhs);
  std::size_t rows() const { return rows_.size(); }
  const std::vector<SparseRow>& row_data() const { return rows_; }
  const std::vector<Q>& rhs() const { return rhs_; }

 private:
  int n_;
  std::vector<SparseRow> rows_;
  std::vector<Q> rhs_;
};

struct LinearSolution {
  std::vector<Q> x;            // free variables set to zero
  std::vector<int> free_vars;  // columns without a pivot
  int rank = 0;
  // row-reduced pivot rows: pivot column -> (row without pivot, rhs)
  std::map<int, std::pair<SparseRow, Q>> pivots;
};

// Exact Gauss-Jordan elimination, pivoting on the smallest column of each row.
// Throws InconsistentSystem when a row reduces to 0 = c with c != 0.
LinearSolution solve(const LinearSystem& sys);

// sum_j a_j x_j
Q dot(const SparseRow& row, const std::vector<Q>& x);

}  // namespace kmr

#endif

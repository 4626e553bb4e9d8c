#include "kmr/linsolve.hpp"

namespace kmr {

bool LinearSystem::add_row(SparseRow row, const Q& rhs) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first < 0 || it->first >= n_) throw std::out_of_range("LinearSystem: column out of range");
    it = it->second == 0 ? row.erase(it) : std::next(it);
  }
  if (row.empty() && rhs == 0) return false;
  rows_.push_back(std::move(row));
  rhs_.push_back(rhs);
  return true;
}

namespace {

// r -= c * p (both sparse)
void axpy(SparseRow& r, const Q& c, const SparseRow& p) {
  for (const auto& [j, v] : p) {
    auto [it, fresh] = r.try_emplace(j, -c * v);
    if (!fresh) {
      it->second -= c * v;
      if (it->second == 0) r.erase(it);
    }
  }
}

}  // namespace

LinearSolution solve(const LinearSystem& sys) {
  LinearSolution sol;
  // pivot col -> normalized row (pivot coefficient 1, pivot entry kept) and rhs
  std::map<int, std::pair<SparseRow, Q>> piv;
  for (std::size_t i = 0; i < sys.rows(); ++i) {
    SparseRow r = sys.row_data()[i];
    Q b = sys.rhs()[i];
    // forward-reduce against existing pivots in increasing column order
    for (auto it = r.begin(); it != r.end();) {
      auto p = piv.find(it->first);
      if (p == piv.end()) {
        ++it;
        continue;
      }
      Q c = it->second;
      int col = it->first;
      axpy(r, c, p->second.first);
      b -= c * p->second.second;
      it = r.upper_bound(col);
    }
    if (r.empty()) {
      if (b != 0) throw InconsistentSystem("inconsistent system: row " + std::to_string(i) + " reduces to 0 = " + q_str(b), i);
      continue;
    }
    int col = r.begin()->first;
    Q lead = r.begin()->second;
    for (auto& [j, v] : r) v /= lead;
    b /= lead;
    piv.emplace(col, std::make_pair(std::move(r), b));
  }
  // back substitution into reduced row echelon form
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    auto& [row, b] = it->second;
    for (auto jt = std::next(row.begin()); jt != row.end();) {
      auto p = piv.find(jt->first);
      if (p == piv.end()) {
        ++jt;
        continue;
      }
      Q c = jt->second;
      int col = jt->first;
      axpy(row, c, p->second.first);
      b -= c * p->second.second;
      jt = row.upper_bound(col);
    }
  }
  sol.x.assign(sys.vars(), Q(0));
  for (const auto& [col, rb] : piv) sol.x[col] = rb.second;
  for (int j = 0; j < sys.vars(); ++j)
    if (!piv.count(j)) sol.free_vars.push_back(j);
  sol.rank = static_cast<int>(piv.size());
  for (auto& [col, rb] : piv) {
    rb.first.erase(col);
    sol.pivots.emplace(col, std::move(rb));
  }
  return sol;
}

Q dot(const SparseRow& row, const std::vector<Q>& x) {
  Q s = 0;
  for (const auto& [j, v] : row) s += v * x[j];
  return s;
}

}  // namespace kmr

#include "crgeom/algebra/linear_system.hpp"

#include <algorithm>

namespace crgeom::algebra {

void SparseRationalSystem::add_equation(Row row, mpq_class rhs) {
  for (auto it = row.begin(); it != row.end();) {
    if (sgn(it->second) == 0) it = row.erase(it);
    else ++it;
  }
  if (row.empty() && sgn(rhs) == 0) return;
  rows_.emplace_back(std::move(row), std::move(rhs));
}

SparseRationalSystem::Solution SparseRationalSystem::solve() const {
  struct Pivot {
    int col;
    Row row;  // normalized: row[col] == 1
    mpq_class rhs;
  };
  std::vector<Pivot> pivots;
  std::map<int, std::size_t> pivot_of;  // column -> index into pivots

  // Short rows first keeps fill-in low.
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows_[a].first.size() < rows_[b].first.size(); });

  Solution sol;
  for (std::size_t idx : order) {
    Row row = rows_[idx].first;
    mpq_class rhs = rows_[idx].second;
    // Eliminate every column that already has a pivot.
    for (;;) {
      auto hit = std::find_if(row.begin(), row.end(), [&](const auto& e) { return pivot_of.count(e.first) > 0; });
      if (hit == row.end()) break;
      const Pivot& p = pivots[pivot_of[hit->first]];
      const mpq_class f = hit->second;
      for (const auto& [c, v] : p.row) {
        mpq_class& slot = row[c];
        slot -= f * v;
        if (sgn(slot) == 0) row.erase(c);
      }
      rhs -= f * p.rhs;
    }
    if (row.empty()) {
      if (sgn(rhs) != 0) {
        sol.status = Status::inconsistent;
        return sol;
      }
      continue;
    }
    // Pivot on the entry with the simplest value.
    auto best = row.begin();
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (abs(it->second) == 1) {
        best = it;
        break;
      }
    }
    const int col = best->first;
    const mpq_class inv = 1 / best->second;
    for (auto& [c, v] : row) v *= inv;
    rhs *= inv;
    pivot_of[col] = pivots.size();
    pivots.push_back({col, std::move(row), std::move(rhs)});
  }

  sol.rank = static_cast<int>(pivots.size());
  if (sol.rank < unknowns_) {
    sol.status = Status::underdetermined;
    return sol;
  }
  sol.values.assign(static_cast<std::size_t>(unknowns_), mpq_class(0));
  // Each pivot row only references columns pivoted after it.
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    mpq_class v = it->rhs;
    for (const auto& [c, coef] : it->row) {
      if (c != it->col) v -= coef * sol.values[static_cast<std::size_t>(c)];
    }
    sol.values[static_cast<std::size_t>(it->col)] = v;
  }
  sol.status = Status::unique;
  return sol;
}

}  // namespace crgeom::algebra

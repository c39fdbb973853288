#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

namespace crgeom::algebra {

/// Sparse exact linear system over Q, solved by incremental elimination.
class SparseRationalSystem {
 public:
  using Row = std::map<int, mpq_class>;

  explicit SparseRationalSystem(int unknowns) : unknowns_(unknowns) {}

  int unknowns() const { return unknowns_; }

  /// Adds sum(row) = rhs. Entries with zero coefficient are ignored.
  void add_equation(Row row, mpq_class rhs);

  enum class Status { unique, inconsistent, underdetermined };

  struct Solution {
    Status status = Status::unique;
    std::vector<mpq_class> values;  // filled for unique solutions
    int rank = 0;
  };

  Solution solve() const;

 private:
  int unknowns_;
  std::vector<std::pair<Row, mpq_class>> rows_;
};

}  // namespace crgeom::algebra

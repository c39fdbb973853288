#pragma once

#include <optional>
#include <vector>

#include "crgeom/algebra/coeff.hpp"

namespace crgeom::algebra {

/// Dense matrix over the coefficient ring.
class CoeffMatrix {
 public:
  CoeffMatrix() = default;
  CoeffMatrix(int rows, int cols, int arity);

  static CoeffMatrix identity(int n, int arity);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int arity() const { return arity_; }

  Coeff& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Coeff& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  CoeffMatrix operator*(const CoeffMatrix& o) const;
  CoeffMatrix transpose() const;
  CoeffMatrix conj() const;
  bool is_zero() const;
  bool is_identity() const;
  int max_degree() const;

  friend bool operator==(const CoeffMatrix& a, const CoeffMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  int arity_ = 0;
  std::vector<Coeff> data_;
};

/// Gauss-Jordan inverse using only unit pivots (nonzero scalar times a
/// Laurent monomial in s, a, E). Returns nullopt when no unit pivot is
/// available at some step, which covers every matrix without polynomial
/// inverse.
std::optional<CoeffMatrix> unit_pivot_inverse(const CoeffMatrix& m);

/// Schwartz-Zippel style singularity probe: exact determinant at a few
/// pseudo-random rational points. True when all of them vanish.
bool probably_singular(const CoeffMatrix& m);

using ScalarMatrix = std::vector<std::vector<GaussianRational>>;

/// Exact determinant over Q(i).
GaussianRational determinant(ScalarMatrix m);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Signature of a constant hermitian matrix by exact congruence reduction.
Inertia hermitian_inertia(ScalarMatrix h);

/// Value at the origin (t = z = zb = 0, s = a = E = 1).
ScalarMatrix at_origin(const CoeffMatrix& m);

}  // namespace crgeom::algebra

#include "crgeom/algebra/matrix.hpp"

#include <random>
#include <tuple>

#include "crgeom/error.hpp"

namespace crgeom::algebra {

CoeffMatrix::CoeffMatrix(int rows, int cols, int arity)
    : rows_(rows), cols_(cols), arity_(arity), data_(static_cast<std::size_t>(rows * cols), Coeff(arity)) {}

CoeffMatrix CoeffMatrix::identity(int n, int arity) {
  CoeffMatrix m(n, n, arity);
  for (int k = 0; k < n; ++k) m(k, k) = Coeff::one(arity);
  return m;
}

CoeffMatrix CoeffMatrix::operator*(const CoeffMatrix& o) const {
  if (cols_ != o.rows_) throw Error(Errc::dimension_mismatch, "matrix shape mismatch");
  CoeffMatrix r(rows_, o.cols_, arity_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Coeff& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
      }
    }
  }
  return r;
}

CoeffMatrix CoeffMatrix::transpose() const {
  CoeffMatrix r(cols_, rows_, arity_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CoeffMatrix CoeffMatrix::conj() const {
  CoeffMatrix r = *this;
  for (auto& c : r.data_) c = c.conj();
  return r;
}

bool CoeffMatrix::is_zero() const {
  for (const auto& c : data_)
    if (!c.is_zero()) return false;
  return true;
}

bool CoeffMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Coeff& c = (*this)(i, j);
      if (i == j ? !(c == Coeff::one(arity_)) : !c.is_zero()) return false;
    }
  return true;
}

int CoeffMatrix::max_degree() const {
  int d = 0;
  for (const auto& c : data_) d = std::max(d, c.degree());
  return d;
}

bool operator==(const CoeffMatrix& a, const CoeffMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t k = 0; k < a.data_.size(); ++k)
    if (!(a.data_[k] == b.data_[k])) return false;
  return true;
}

std::optional<CoeffMatrix> unit_pivot_inverse(const CoeffMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::dimension_mismatch, "inverse of a non-square matrix");
  const int n = m.rows();
  CoeffMatrix a = m;
  CoeffMatrix r = CoeffMatrix::identity(n, m.arity());
  std::vector<int> pivot_col(static_cast<std::size_t>(n), -1);
  std::vector<bool> col_used(static_cast<std::size_t>(n), false);

  for (int step = 0; step < n; ++step) {
    // Markowitz-style choice among unit entries: constants first, then the
    // smallest fill-in estimate, then the fewest terms.
    std::vector<int> row_nz(static_cast<std::size_t>(n), 0), col_nz(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (pivot_col[i] < 0 && !col_used[j] && !a(i, j).is_zero()) ++row_nz[i], ++col_nz[j];
    int pr = -1, pc = -1;
    std::tuple<int, int, std::size_t> best{2, 0, 0};
    for (int i = 0; i < n; ++i) {
      if (pivot_col[i] >= 0) continue;
      for (int j = 0; j < n; ++j) {
        if (col_used[j] || !a(i, j).is_unit()) continue;
        const std::tuple<int, int, std::size_t> key{a(i, j).is_constant() ? 0 : 1, (row_nz[i] - 1) * (col_nz[j] - 1),
                                                    a(i, j).size()};
        if (pr < 0 || key < best) pr = i, pc = j, best = key;
      }
    }
    if (pr < 0) return std::nullopt;

    const Coeff inv = a(pr, pc).unit_inverse();
    for (int j = 0; j < n; ++j) {
      a(pr, j) = a(pr, j) * inv;
      r(pr, j) = r(pr, j) * inv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == pr || a(i, pc).is_zero()) continue;
      const Coeff f = a(i, pc);
      for (int j = 0; j < n; ++j) {
        if (!a(pr, j).is_zero()) a(i, j) -= f * a(pr, j);
        if (!r(pr, j).is_zero()) r(i, j) -= f * r(pr, j);
      }
    }
    pivot_col[pr] = pc;
    col_used[pc] = true;
  }

  CoeffMatrix inv(n, n, m.arity());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(pivot_col[i], j) = r(i, j);
  return inv;
}

GaussianRational determinant(ScalarMatrix m) {
  const std::size_t n = m.size();
  GaussianRational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k].is_zero()) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    det *= m[k][k];
    const GaussianRational inv = m[k][k].inv();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      const GaussianRational f = m[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

bool probably_singular(const CoeffMatrix& m) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<long> dist(-97, 97);
  for (int trial = 0; trial < 3; ++trial) {
    std::array<GaussianRational, kSlots> values;
    for (auto& v : values) {
      long re = dist(rng), im = dist(rng);
      if (re == 0 && im == 0) re = 1;
      v = GaussianRational(mpq_class(re, 7), mpq_class(im, 11));
    }
    ScalarMatrix s(static_cast<std::size_t>(m.rows()), std::vector<GaussianRational>(static_cast<std::size_t>(m.cols())));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) s[i][j] = m(i, j).evaluate_exact(values);
    if (!determinant(std::move(s)).is_zero()) return false;
  }
  return true;
}

Inertia hermitian_inertia(ScalarMatrix h) {
  const std::size_t n = h.size();
  Inertia out;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t k = 0; k < n; ++k)
      if (!done[k] && !h[k][k].is_zero()) {
        p = k;
        break;
      }
    if (p == n) {
      // Zero diagonal: combine two coordinates to create a nonzero one.
      std::size_t a = n, b = n;
      for (std::size_t i = 0; i < n && a == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && !h[i][j].is_zero()) {
            a = i, b = j;
            break;
          }
      if (a == n) break;
      // e_a <- e_a + c e_b; the new diagonal entry is 2 Re(c h_ab).
      const GaussianRational c = sgn(h[a][b].re()) != 0 ? GaussianRational(1) : GaussianRational::i();
      for (std::size_t j = 0; j < n; ++j) h[a][j] += c.conj() * h[b][j];
      for (std::size_t i = 0; i < n; ++i) h[i][a] += c * h[i][b];
      p = a;
    }
    const GaussianRational piv = h[p][p];
    if (sgn(piv.re()) > 0) ++out.positive;
    else ++out.negative;
    const GaussianRational inv = piv.inv();
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || i == p || h[i][p].is_zero()) continue;
      const GaussianRational f = h[i][p] * inv;
      for (std::size_t j = 0; j < n; ++j) h[i][j] -= f * h[p][j];
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j] || j == p) continue;
      h[p][j] = 0;
      h[j][p] = 0;
    }
    done[p] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!done[k]) ++out.zero;
  return out;
}

ScalarMatrix at_origin(const CoeffMatrix& m) {
  std::array<GaussianRational, kSlots> values;
  for (int k = kSlotT; k < kSlotS; ++k) values[k] = 0;
  values[kSlotS] = values[kSlotA] = values[kSlotE] = 1;
  ScalarMatrix s(static_cast<std::size_t>(m.rows()), std::vector<GaussianRational>(static_cast<std::size_t>(m.cols())));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s[i][j] = m(i, j).evaluate_exact(values);
  return s;
}

}  // namespace crgeom::algebra

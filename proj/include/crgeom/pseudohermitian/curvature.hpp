#pragma once

#include <array>
#include <vector>

#include "crgeom/pseudohermitian/connection.hpp"

namespace crgeom::ph {

/// Rank-4 array T(a, b, c, d) of coefficients, all indices in [0, n).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n);

  int n() const { return n_; }
  Coeff& operator()(int a, int b, int c, int d) { return data_[index(a, b, c, d)]; }
  const Coeff& operator()(int a, int b, int c, int d) const { return data_[index(a, b, c, d)]; }
  bool is_zero() const;
  friend bool operator==(const Tensor4& x, const Tensor4& y);

 private:
  std::size_t index(int a, int b, int c, int d) const {
    return static_cast<std::size_t>(((a * n_ + b) * n_ + c) * n_ + d);
  }
  int n_ = 0;
  std::vector<Coeff> data_;
};

struct CurvatureOptions {
  /// Keep only the theta^r ^ conj theta^s part of Omega even when A != 0.
  /// Valid for chern-image bookkeeping only; no reconstruction check is run.
  bool allow_torsion = false;
};

struct CurvatureData {
  int n = 0;
  std::vector<std::vector<Form>> omega2;  // Omega_a^b
  Tensor4 R;                              // R(a, b, r, s) = R_a^b_{r sbar}
  CoeffMatrix ricci;                      // R_{r sbar}
  Coeff scalar;
  Tensor4 chern;        // S_a^b_{r sbar}
  Tensor4 chern_lower;  // S_{a bbar r sbar}
  std::vector<std::vector<Form>> reconstruction_residual;
};

/// Errors: torsion_unsupported (A != 0 without allow_torsion),
/// unexpected_curvature (Omega has terms beyond R theta^r ^ conj theta^s).
CurvatureData curvature(const PHStructure& s, const Connection& c, CurvatureOptions opts = {});

/// R_{a bbar r sbar} = R_a^g_{r sbar} h_{g bbar}.
Tensor4 lower_first(const Tensor4& r, const CoeffMatrix& h);
/// S_a^b_{r sbar} = S_{a gbar r sbar} h^{b gbar}.
Tensor4 raise_second(const Tensor4& low, const CoeffMatrix& hinv);

/// Totally trace-free part of a lowered curvature-type tensor.
///   S = R - (R_{a bbar} h_{r sbar} + R_{r bbar} h_{a sbar} + R_{a sbar} h_{r bbar}
///            + R_{r sbar} h_{a bbar}) / (n + 2)
///       + scal (h_{a bbar} h_{r sbar} + h_{a sbar} h_{r bbar}) / ((n + 1)(n + 2))
/// with R_{r sbar} = h^{a bbar} R_{a bbar r sbar}, scal = h^{r sbar} R_{r sbar}.
Tensor4 chern_part(const Tensor4& low, const CoeffMatrix& h, const CoeffMatrix& hinv);

/// The four h-traces of a lowered tensor, over index pairs
/// (a, bbar), (a, sbar), (r, bbar), (r, sbar).
std::array<CoeffMatrix, 4> traces(const Tensor4& low, const CoeffMatrix& hinv);

/// Frame directions b (0-based) for which some S_a^b_{r sbar} is nonzero;
/// the image of the Chern map is spanned by the corresponding Z_b.
std::vector<int> chern_image(const CurvatureData& curv);

struct Hessian {
  std::vector<Coeff> first;               // u_a = Z_a u
  std::vector<std::vector<Coeff>> pure;   // u_{ab}
  std::vector<std::vector<Coeff>> mixed;  // u_{a bbar}
};

/// u_{ab} = Z_b u_a - omega_a^g(Z_b) u_g, u_{a bbar} = Zbar_b u_a - omega_a^g(Zbar_b) u_g.
Hessian covariant_hessian(const PHStructure& s, const Connection& c, const Coeff& u);

}  // namespace crgeom::ph

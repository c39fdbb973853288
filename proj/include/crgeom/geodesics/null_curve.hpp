#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <vector>

#include "crgeom/pseudohermitian/connection.hpp"
#include "crgeom/pseudohermitian/report.hpp"
#include "crgeom/pseudohermitian/structure.hpp"

namespace crgeom::geodesics {

using algebra::Coeff;
using algebra::GaussianRational;
using exterior::Form;
using exterior::VectorField;
using ph::Connection;
using ph::PHStructure;
using cplx = std::complex<double>;

/// Exact polynomial curve gamma(zeta) in R x C^n. Coordinates are arity-1
/// coefficients where the generator z1 is zeta and zb1 is conj(zeta); the t
/// image is real and the zb_j images are the conjugates of the z_j images.
struct NullCurve {
  int n = 0;
  std::vector<Coeff> coords;  // 2n+1 images in basis order (t, z_j, zb_j)
  cplx lo{-1.0, -1.0}, hi{1.0, 1.0};  // parameter rectangle

  /// Errors: dimension_mismatch, non_real (t image not real).
  static NullCurve from_map(int n, const Coeff& t, const std::vector<Coeff>& z);
  /// z_index = base_index + zeta (1-based index), every other coordinate fixed
  /// at the base point.
  static NullCurve leaf(int n, int index, const GaussianRational& t0 = 0,
                        const std::vector<GaussianRational>& z0 = {});

  static Coeff zeta() { return Coeff::var(1, algebra::Var::z(1)); }

  /// f o gamma; E is kept formal.
  Coeff along(const Coeff& f) const;
  /// gamma_* d_zeta and gamma_* d_zetabar as coordinate components.
  std::vector<Coeff> tangent() const;
  std::vector<Coeff> antitangent() const;
  /// w(gamma') and w(conj gamma') along the curve for a 1-form w.
  Coeff on_tangent(const Form& w) const;
  Coeff on_antitangent(const Form& w) const;
  /// Exponential context of upsilon o gamma (inactive if ctx is).
  algebra::ExpContext along(const algebra::ExpContext& ctx) const;
  /// d/dzeta and d/dzetabar of an along-curve coefficient.
  Coeff d_zeta(const Coeff& f, const algebra::ExpContext& curve_ctx = {}) const;
  Coeff d_zetabar(const Coeff& f, const algebra::ExpContext& curve_ctx = {}) const;
};

/// Frame data of gamma' = v^a Z_a + (theta part) T + (antiholomorphic part).
struct CurveFrame {
  std::vector<Coeff> v;            // theta^a(gamma')
  Coeff theta_part;                // theta(gamma')
  std::vector<Coeff> bar_part;     // conj theta^a(gamma')
  Coeff null_defect;               // h_{a bbar} v^a conj(v^b)
};

CurveFrame curve_frame(const PHStructure& s, const NullCurve& g);

/// Throws Error(precondition) naming the first failed invariant: zero
/// tangent, type (1,0) (theta and conj theta^a must vanish on gamma'), or
/// the null condition h(gamma', conj gamma') = 0.
void require_null(const PHStructure& s, const NullCurve& g);

/// u with nabla_{gamma'} gamma' = u gamma'; throws Error(precondition) if
/// gamma is not a complex null geodesic (including nabla_{conj gamma'} gamma' != 0).
Coeff geodesic_coefficient(const PHStructure& s, const Connection& c, const NullCurve& g);

/// Q = 2i (gamma')^a (gamma')^b A_{ab} along gamma, exact in zeta.
Coeff projective_parameter_rhs(const PHStructure& s, const Connection& c, const NullCurve& g);

struct LeafGeodesicReport {
  ph::Report report;
  std::optional<Coeff> u;  // set when nabla_Z Z = u Z holds
  bool pass() const { return report.all_pass(); }
};

/// Symbolic checks on a type (1,0) field: null, [Z, conj Z] = 0,
/// nabla_Z Z = u Z (u extracted), nabla_{conj Z} Z = 0.
LeafGeodesicReport verify_leaf_geodesic(const PHStructure& s, const Connection& c, const VectorField& z);

struct GeodesicOptions {
  double radius = 1.0;  // parameter disc |zeta| <= radius
  int grid = 10;        // grid nodes per half-axis
  double step = 1e-2;   // RK4 step along each axis
  double null_tol = 1e-12;
  double abort_residual = 1e-6;
};

struct GeodesicSample {
  cplx zeta;
  double t = 0;
  std::vector<cplx> z;
  std::vector<cplx> v;  // frame components of gamma'
  cplx w;               // integrated CR function t + i phi
  double residual_r = 0;
  double null_defect = 0;
  double commutativity_defect = 0;  // |x-then-y minus y-then-x|
};

struct GeodesicRun {
  int n = 0;
  std::vector<GeodesicSample> samples;
  double max_residual = 0;
  double max_null_defect = 0;
  double max_commutativity_defect = 0;
};

/// Integrates nabla_{gamma'} gamma' = 0 and nabla_{conj gamma'} gamma' = 0
/// over a grid in |zeta| <= radius as two real flows (x then y, and y then
/// x). The CR function w = t + i phi is carried along as a state variable;
/// residual_r = |w - (t + i phi(z))|. Errors: precondition (v0 zero or not
/// null to null_tol), numeric_breach (residual above abort_residual).
GeodesicRun integrate_null_geodesic(const PHStructure& s, const Connection& c, const Coeff& phi,
                                    const algebra::NumericPoint& start, const std::vector<cplx>& v0,
                                    const GeodesicOptions& opt = {});

/// Columns: zeta_re, zeta_im, t, z1_re, z1_im, ..., residual_r, null_defect.
void write_csv(std::ostream& os, const GeodesicRun& run);

}  // namespace crgeom::geodesics

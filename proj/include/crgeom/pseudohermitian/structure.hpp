#pragma once

#include <vector>

#include <json.hpp>

#include "crgeom/algebra/matrix.hpp"
#include "crgeom/exterior/form.hpp"
#include "crgeom/exterior/vector_field.hpp"

namespace crgeom::ph {

using algebra::Coeff;
using algebra::CoeffMatrix;
using algebra::ExpContext;
using algebra::GaussianRational;
using exterior::Form;
using exterior::VectorField;

/// Hypersurface Im w = phi(z, zb) with t = Re w; phi must be real.
/// The contact form is Re(i d'r) for r = Im w - phi:
///   theta = dt/2 + (i/2)(dbar phi - d phi).
Form contact_from_defining(const Coeff& phi);

/// Pseudohermitian data with everything derived from (theta, coframe).
/// Index conventions are 0-based: coframe[a] is theta^{a+1}.
struct PHStructure {
  int n = 0;
  Form theta{0, 1};
  std::vector<Form> coframe;
  ExpContext ctx;

  VectorField reeb{0};
  std::vector<VectorField> frame;
  CoeffMatrix levi;      // levi(a, b) = h_{a bbar}
  CoeffMatrix levi_inv;  // levi_inv(a, b) = h^{a bbar}
  algebra::Inertia signature;

  /// Adapted coframe in the order (theta, theta^a, conj theta^a) and the dual
  /// frame (T, Z_a, conj Z_a).
  Form coframe_at(int k) const;
  VectorField frame_at(int k) const;
  int dim() const { return 2 * n + 1; }
};

/// Derives Reeb field, dual frame, Levi form and signature, then checks every
/// structure invariant. Errors: non_real, degenerate, non_polynomial_dual_frame,
/// inadmissible_coframe.
PHStructure complete_structure(Form theta, std::vector<Form> coframe, ExpContext ctx = {});

/// Coframe theta^a = dz^a, the standard choice for graph-type hypersurfaces.
std::vector<Form> coordinate_coframe(int n);

/// Exact residuals of the structure invariants (all zero on valid output).
struct StructureResidual {
  Coeff theta_of_reeb_minus_one;
  Form reeb_in_dtheta{0, 1};
  Form levi_equation{0, 2};  // dtheta - i h theta^a ^ conj theta^b
  CoeffMatrix duality_defect;
  CoeffMatrix hermitian_defect;
  CoeffMatrix inverse_defect;
  bool is_zero() const;
};
StructureResidual check_structure(const PHStructure& s);

nlohmann::json structure_to_json(const PHStructure& s);

}  // namespace crgeom::ph

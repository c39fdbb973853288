#pragma once

#include "crgeom/pseudohermitian/connection.hpp"
#include "crgeom/pseudohermitian/curvature.hpp"
#include "crgeom/pseudohermitian/report.hpp"

namespace crgeom::ph {

/// theta_hat = E theta with E = exp(upsilon), coframe
/// theta_hat^a = theta^a + c upsilon^a theta, c fixed by admissibility.
struct RescaleResult {
  PHStructure structure;
  Connection direct;  // solve_connection on the new structure
  Connection lee;     // transformation formulas applied to the old connection
  GaussianRational c;
  std::vector<std::vector<Coeff>> predicted_torsion;  // A + i U_ab - i U_a U_b
  Report report;
};

/// Errors: non_real (upsilon), adaptation_failed (no constant c works),
/// precondition (input already rescaled).
RescaleResult rescale(const PHStructure& s, const Connection& c, const Coeff& upsilon);

/// Lee's laws for the new connection in the frame (T_hat, Z_a, conj Z_a):
///   omega_hat_b^a(Z_g)    = omega_b^a(Z_g) + U_g delta^a_b + U_b delta^a_g
///   omega_hat_b^a(Zbar_g) = omega_b^a(Zbar_g) - h_{b gbar} U^a
///   omega_hat_b^a(T_hat)  = theta_hat^a([T_hat, Z_b])
Connection lee_transform(const PHStructure& old_s, const Connection& old_c, const PHStructure& new_s,
                         const Coeff& upsilon);

}  // namespace crgeom::ph

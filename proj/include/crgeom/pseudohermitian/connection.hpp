#pragma once

#include <vector>

#include "crgeom/pseudohermitian/structure.hpp"

namespace crgeom::ph {

/// Tanaka-Webster connection: omega[a][b] = omega_a^b, torsion[a][b] = A_{ab}.
struct Connection {
  std::vector<std::vector<Form>> omega;
  std::vector<std::vector<Coeff>> torsion;

  static Connection zero(int n);
  bool torsion_free() const;
  /// omega_a^b evaluated on a frame vector.
  Coeff omega_on(int a, int b, const VectorField& x) const;
};

struct SolveInfo {
  int degree_bound = 0;
  int data_degree = 0;
  int monomial_classes = 0;
  int unknowns_per_class = 0;
};

/// Unique solution of
///   d theta^b = theta^a ^ omega_a^b + A^b_{cbar} theta ^ conj theta^c,
///   d h_{a bbar} = omega_{a bbar} + conj(omega_{b abar}),  A_{ab} = A_{ba}.
/// Every coefficient is expanded in the coframe (theta, theta^a, conj theta^a);
/// the resulting linear system has constant coefficients, so it is solved
/// exactly monomial by monomial (paired with the conjugate monomial).
/// Errors: degree_bound_exceeded, convention_violation.
Connection solve_connection(const PHStructure& s, SolveInfo* info = nullptr);

struct ConnectionResidual {
  std::vector<Form> structure;            // per b, a 2-form
  std::vector<std::vector<Form>> metric;  // [a][b], 1-forms
  std::vector<std::vector<Coeff>> symmetry;
  bool is_zero() const;
};

/// Independent check of the defining equations in the coordinate basis.
ConnectionResidual verify_connection(const PHStructure& s, const Connection& c);

/// omega_{a bbar} = omega_a^c h_{c bbar}.
Form lowered_omega(const PHStructure& s, const Connection& c, int a, int b);

}  // namespace crgeom::ph

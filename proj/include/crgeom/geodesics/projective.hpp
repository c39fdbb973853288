#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

#include "crgeom/geodesics/null_curve.hpp"
#include "crgeom/geodesics/schwarzian.hpp"

namespace crgeom::geodesics {

/// Exact data along gamma for theta_hat = e^U theta. Primes are d/dzeta.
struct AffineReparameterization {
  Coeff upsilon_prime;         // U'
  Coeff upsilon_second;        // U''
  Coeff holomorphy_defect;     // d/dzetabar U' (zero when U is pluriharmonic along gamma)
  Coeff mixed_hessian_defect;  // d/dzetabar U' - v^a conj(v^b) U_{a bbar}
  Coeff pure_hessian_defect;   // U'' - v^a v^b U_{ab} (gamma affine)
  Coeff zhat_schwarzian;       // {zhat, z} = 2 (U'' - U'^2)
};

/// Errors: precondition unless gamma is an affinely parameterized complex
/// null geodesic of (s, c).
AffineReparameterization affine_reparameterization(const PHStructure& s, const Connection& c, const NullCurve& g,
                                                   const Coeff& upsilon);

struct ProjectiveSample {
  cplx zeta;
  cplx p, p_hat;
  cplx cross;  // {p_hat, p} = ({p_hat, zeta} - {p, zeta}) / p'^2
};

struct ProjectiveConsistency {
  std::vector<ProjectiveSample> samples;
  double max_cross = 0;
};

/// Projective parameters of gamma for theta and theta_hat = e^U theta on the
/// segment [from, to]. p solves {p, zeta} = Q; p_hat is integrated in the
/// affine parameter zhat of theta_hat (zhat''/zhat' = 2 U') with potential
/// Q_hat = 2i A_hat(gamma_hat', gamma_hat'), then compared through the
/// numeric cross-Schwarzian. Errors: as affine_reparameterization, plus the
/// ODE solver errors.
ProjectiveConsistency projective_consistency(const PHStructure& s, const Connection& c, const PHStructure& s_hat,
                                             const Connection& c_hat, const Coeff& upsilon, const NullCurve& g,
                                             cplx from, cplx to, double step = 1e-3, int sample_every = 10);

/// Deck transformation z -> e^{exponent} z on the invariant leaf quotient,
/// with the exponent read off the leaf weight of Gamma.
struct QuotientInvariant {
  mpq_class beta;
  mpq_class exponent;
  std::string deck() const;
};

/// Errors: precondition for beta >= 0.
QuotientInvariant quotient_projective_invariant(const mpq_class& beta);

enum class Verdict { equivalent, inequivalent };
const char* verdict_name(Verdict v);
/// Exact comparison of the multiplier exponents. Errors: precondition for
/// beta >= 0 or beta_tilde >= 0.
Verdict equivalence_test(const mpq_class& beta, const mpq_class& beta_tilde);

}  // namespace crgeom::geodesics

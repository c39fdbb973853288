#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>
#include <json.hpp>

#include "crgeom/exterior/diagonal_action.hpp"
#include "crgeom/pseudohermitian/curvature.hpp"

namespace crgeom::examples {

using algebra::Coeff;
using algebra::CoeffMatrix;

enum class Kind { pq, lorentzian };

/// Quotient parameters; valid iff 4 beta < alpha < 0.
struct QuotientParams {
  mpq_class alpha{-1};
  mpq_class beta{-5, 4};
};
/// Throws Error(precondition) unless 4 beta < alpha < 0.
void validate(const QuotientParams& q);

/// Hypersurface Im w = h(z, zb) + |z1|^4 with a weighted diagonal action
/// Gamma and the generator X of s -> Gamma_{0,-s}.
struct ExampleSpec {
  Kind kind = Kind::pq;
  int p = 0, q = 0;  // Levi signature
  int n = 0;         // complex coordinates z_1..z_n
  Coeff hermitian;   // h(z, zb)
  Coeff quartic;     // |z1|^4
  Coeff phi;         // hermitian + quartic
  CoeffMatrix levi_matrix;
  exterior::DiagonalAction gamma{{}, {}};
  exterior::VectorField essential{0};
  QuotientParams quotient;
  bool inferred = false;  // signature (1, n-1) with n > 2 extends the (p,q) recipe by inference

  std::string label() const;
  /// t-weight exponent of s (the homothety factor of theta).
  int homothety_weight() const { return gamma.t_weight().s; }
};

struct ExampleBuild {
  ExampleSpec spec;
  ph::PHStructure structure;
  ph::Connection connection;
  ph::CurvatureData curvature;
};

/// Errors: precondition for p < 2, q < p, p + q > 6.
ExampleSpec pq_spec(int p, int q, QuotientParams quotient = {});
/// Errors: precondition unless 2 <= n <= 5.
ExampleSpec lorentzian_spec(int n);
/// Parses "p,q", "pq:p,q" or "lorentzian:n".
ExampleSpec spec_from_label(const std::string& label);

/// Full pipeline; self-checks Ricci == 0 and Chern != 0.
ExampleBuild build(const ExampleSpec& spec);
ExampleBuild build_example(int p, int q);
ExampleBuild build_lorentzian(int n);

/// h^{a bbar} d_{z_a} d_{zb_b} quartic for a constant hermitian matrix h.
Coeff normal_form_tracefree_check(const Coeff& quartic, const CoeffMatrix& h);

/// Contact form and coordinate coframe of the spec, before completion.
ph::PHStructure structure_of(const ExampleSpec& spec);

nlohmann::json spec_to_json(const ExampleSpec& spec);

}  // namespace crgeom::examples

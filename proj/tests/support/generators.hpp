#pragma once

// Seeded generators for property tests. Sizes stay small so exact
// arithmetic on products remains cheap.

#include <bit>
#include <random>

#include "crgeom/algebra/coeff.hpp"
#include "crgeom/exterior/form.hpp"
#include "crgeom/exterior/vector_field.hpp"

namespace crgeom::proptest {

using algebra::Coeff;
using algebra::GaussianRational;
using algebra::Monomial;
using algebra::Var;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  GaussianRational scalar() {
    const long re = uniform(-6, 6);
    const long im = coin() ? uniform(-6, 6) : 0;
    return {mpq_class(re, uniform(1, 4)), mpq_class(im, uniform(1, 4))};
  }

  GaussianRational nonzero_scalar() {
    for (;;) {
      auto c = scalar();
      if (!c.is_zero()) return c;
    }
  }

  /// Monomial of positional degree <= max_degree; Laurent units when asked.
  Monomial monomial(int arity, int max_degree, bool laurent) {
    Monomial m;
    const int deg = uniform(0, max_degree);
    for (int k = 0; k < deg; ++k) {
      const int c = uniform(0, 2 * arity);
      Var v = c == 0 ? Var::t() : c <= arity ? Var::z(c) : Var::zbar(c - arity);
      m = m * Monomial::of(v);
    }
    if (laurent) {
      m = m * Monomial::of(Var::s(), uniform(-2, 2));
      m = m * Monomial::of(Var::a(), uniform(-1, 1));
    }
    return m;
  }

  Coeff coeff(int arity, int max_terms = 3, int max_degree = 3, bool laurent = false) {
    std::vector<algebra::Term> terms;
    const int n = uniform(0, max_terms);
    for (int k = 0; k < n; ++k) terms.push_back({monomial(arity, max_degree, laurent), scalar()});
    return Coeff::from_terms(arity, std::move(terms));
  }

  exterior::Form form(int arity, int degree, int max_terms = 3) {
    const int dim = exterior::basis_size(arity);
    exterior::Form w(arity, degree);
    const int n = uniform(0, max_terms);
    for (int k = 0; k < n; ++k) {
      std::uint32_t mask = 0;
      while (std::popcount(mask) < degree) mask |= 1u << uniform(0, dim - 1);
      w.add_term(mask, coeff(arity, 2, 3));
    }
    return w;
  }

  exterior::VectorField field(int arity) {
    exterior::VectorField x(arity);
    for (int k = 0; k < x.size(); ++k)
      if (uniform(0, 2) == 0) x[k] = coeff(arity, 2, 2);
    return x;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace crgeom::proptest

// One PASS/FAIL line per acceptance criterion. A criterion passes only if
// every clause holds and it finishes inside its time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "crgeom/algebra/parser.hpp"
#include "crgeom/dynamics/flow.hpp"
#include "crgeom/examples/family.hpp"
#include "crgeom/exterior/vector_field.hpp"
#include "crgeom/geodesics/projective.hpp"
#include "crgeom/pseudohermitian/rescale.hpp"
#include "generators.hpp"

using namespace crgeom;
using algebra::Coeff;
using algebra::GaussianRational;
using geodesics::cplx;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& clause) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + clause;
  }
};

const examples::ExampleBuild& ex22() {
  static const examples::ExampleBuild b = examples::build_example(2, 2);
  return b;
}

Coeff P(const char* s) { return algebra::parse_expr(s, 4); }

Outcome connection_reproduction() {
  const auto b = examples::build_example(2, 2);
  Outcome o;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) {
      const exterior::Form expected = a == 0 && c == 1 ? P("4*zb1") * b.structure.coframe[0] : exterior::Form(4, 1);
      o.require(b.connection.omega[a][c] == expected, "omega[" + std::to_string(a + 1) + "][" + std::to_string(c + 1) + "]");
    }
  o.require(b.connection.torsion_free(), "torsion != 0");
  return o;
}

Outcome curvature_reproduction() {
  const auto& cd = ex22().curvature;
  Outcome o;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          const Coeff expected = a == 0 && c == 1 && r == 0 && s == 0 ? Coeff::constant(4, -4) : Coeff(4);
          o.require(cd.R(a, c, r, s) == expected, "R component");
        }
  return o;
}

Outcome pseudo_einstein_and_chern() {
  const auto b = examples::build_example(2, 2);
  Outcome o;
  o.require(b.curvature.ricci.is_zero(), "Ricci != 0");
  o.require(b.curvature.scalar.is_zero(), "scalar != 0");
  o.require(b.curvature.chern == b.curvature.R, "Chern != R");
  o.require(!b.curvature.chern.is_zero(), "Chern == 0");
  o.require(ph::chern_image(b.curvature) == std::vector<int>{1}, "Chern image != span{Z_2}");
  return o;
}

Outcome homothety_and_essential_field() {
  const auto spec = examples::pq_spec(2, 2);
  Outcome o;
  const auto inv = dynamics::verify_action_invariants(spec);
  for (const auto& e : inv.entries()) o.require(e.pass, e.identity);
  const GaussianRational exact = dynamics::contact_volume_rate(spec);
  o.require(exact == GaussianRational(-20), "contact volume rate " + exact.to_string());
  dynamics::AttractorOptions opt;
  opt.seeds = 20;
  const auto rep = dynamics::attractor_report(spec, dynamics::QuotientSpec{}, opt);
  const double ref = exact.to_complex().real();
  o.require(std::abs(rep.lebesgue_volume_rate - ref) <= 0.01 * std::abs(ref),
            "numeric volume rate " + std::to_string(rep.lebesgue_volume_rate));
  return o;
}

Outcome lee_transformation_laws() {
  const auto& b = ex22();
  const auto r = ph::rescale(b.structure, b.connection, P("z2 + zb2"));
  Outcome o;
  o.require(r.direct.omega == r.lee.omega, "direct omega != Lee omega");
  o.require(r.direct.torsion == r.lee.torsion, "direct torsion != Lee torsion");
  const Coeff minus_i = -GaussianRational::i() * Coeff::one(4);
  o.require(r.direct.torsion[1][1] == minus_i, "A_hat_22 = " + r.direct.torsion[1][1].to_string());
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c)
      if (!(a == 1 && c == 1) && !r.direct.torsion[a][c].is_zero())
        o.require(false, "A_hat_" + std::to_string(a + 1) + std::to_string(c + 1) + " = " +
                             r.direct.torsion[a][c].to_string());
  return o;
}

geodesics::Poly random_poly(proptest::Gen& g, int max_degree) {
  std::vector<GaussianRational> c;
  const int deg = g.uniform(0, max_degree);
  for (int k = 0; k <= deg; ++k) c.push_back(GaussianRational(g.uniform(-3, 3), g.uniform(-2, 2)));
  return geodesics::Poly(c);
}

geodesics::RationalMap random_map(proptest::Gen& g) {
  for (;;) {
    const geodesics::Poly den = random_poly(g, 2);
    if (den.is_zero()) continue;
    geodesics::RationalMap r(random_poly(g, 3), den);
    if (!r.is_constant()) return r;
  }
}

Outcome schwarzian_suite() {
  using namespace geodesics;
  Outcome o;
  proptest::Gen g(601);
  for (int k = 0; k < 100; ++k) {
    const GaussianRational a(g.uniform(-3, 3), g.uniform(-3, 3)), b(g.uniform(-3, 3)), c(g.uniform(-2, 2), 1),
        d(g.uniform(-3, 3), g.uniform(-1, 1));
    if ((a * d - b * c).is_zero()) continue;
    o.require(schwarzian_exact(RationalMap::mobius(a, b, c, d)).is_zero(), "Mobius map with nonzero Schwarzian");
  }
  int pairs = 0;
  while (pairs < 100) {
    const RationalMap p = random_map(g), w = random_map(g);
    if (p.compose(w).is_constant()) continue;
    ++pairs;
    o.require(chain_rule_residual(p, w).is_zero(), "chain rule fails for " + p.to_string() + " o " + w.to_string());
  }
  for (const cplx c : {cplx(1.0), cplx(0.5), cplx(0.3, 0.7)}) {
    SchwarzianODE ode{[c](cplx) { return -2.0 * c * c; }, 1.0, 2.0 * c, 4.0 * c * c};
    const auto samples = solve_schwarzian_ode(ode, ComplexPath::segment(0.0, cplx(0.6, 0.4)), 1e-3, 10);
    double worst = 0;
    for (std::size_t i = 4; i + 4 < samples.size(); ++i)
      worst = std::max(worst, std::abs(numeric_schwarzian_at(samples, i) + 2.0 * c * c));
    o.require(worst < 1e-8, "exponential family off by " + std::to_string(worst));
  }
  const auto& ex = ex22();
  const auto r = ph::rescale(ex.structure, ex.connection, P("z2 + zb2"));
  const auto pc = projective_consistency(ex.structure, ex.connection, r.structure, r.direct, P("z2 + zb2"),
                                         NullCurve::leaf(4, 2), 0.0, cplx(0.5, 0.4));
  o.require(pc.max_cross < 1e-6, "cross-Schwarzian " + std::to_string(pc.max_cross));
  return o;
}

Outcome leaf_geodesics() {
  using namespace geodesics;
  const auto& b = ex22();
  Outcome o;
  const auto leaf = verify_leaf_geodesic(b.structure, b.connection, b.structure.frame[1]);
  o.require(leaf.pass(), "leaf report");
  o.require(leaf.u && leaf.u->is_zero(), "u != 0");
  const auto start = algebra::NumericPoint::real(0.0, {0.0, 1.0, 0.0, 0.0});
  const auto run = integrate_null_geodesic(b.structure, b.connection, b.spec.phi, start, {0.0, 1.0, 0.0, 0.0}, {});
  double dev = 0;
  for (const auto& s : run.samples) {
    o.require(std::abs(s.zeta) <= 1.0 + 1e-12, "sample outside |zeta| <= 1");
    dev = std::max({dev, std::abs(s.t), std::abs(s.z[0]), std::abs(s.z[1] - (1.0 + s.zeta)), std::abs(s.z[2]),
                    std::abs(s.z[3])});
  }
  o.require(dev < 1e-8, "leaf deviation " + std::to_string(dev));
  // Q = 0 and u = 0: z2 is affine, so every projective parameter is Mobius in z2.
  const NullCurve curve = NullCurve::leaf(4, 2);
  o.require(projective_parameter_rhs(b.structure, b.connection, curve).is_zero(), "Q != 0 on the leaf");
  o.require(geodesic_coefficient(b.structure, b.connection, curve).is_zero(), "z2 not affine");
  SchwarzianODE ode{[](cplx) { return cplx(0.0); }, 0.0, 1.0, 0.0};
  const auto samples = solve_schwarzian_ode(ode, ComplexPath::segment(0.0, cplx(0.7, 0.3)), 1e-3, 10);
  for (const auto& s : samples) o.require(std::abs(s.p - s.z) < 1e-12, "projective parameter drifts from z2");
  return o;
}

Outcome attractor_dynamics() {
  const auto spec = examples::pq_spec(2, 2);
  examples::QuotientParams qp{mpq_class(-1), mpq_class(-5, 4)};
  dynamics::AttractorOptions opt;
  opt.seeds = 100;
  opt.tau_end = 10;
  const auto rep = dynamics::attractor_report(spec, dynamics::QuotientSpec::from(qp), opt);
  Outcome o;
  const double expected[] = {4, 1, 3, 4, 0};
  for (std::size_t k = 0; k < rep.fits.size(); ++k) {
    const auto& f = rep.fits[k];
    const double tol = expected[k] == 0 ? 0.01 : 0.01 * expected[k];
    o.require(f.expected == expected[k], "expected rate table");
    o.require(std::abs(f.rate_min - expected[k]) <= tol && std::abs(f.rate_max - expected[k]) <= tol,
              "rate " + f.name + " in [" + std::to_string(f.rate_min) + ", " + std::to_string(f.rate_max) + "]");
  }
  o.require(rep.fits.size() == 5, "five fits");
  o.require(rep.residual_max < 1e-9, "residual " + std::to_string(rep.residual_max));
  o.require(rep.pass, "report pass flag");
  return o;
}

Outcome family_generalization() {
  Outcome o;
  std::vector<examples::ExampleSpec> specs{examples::pq_spec(2, 2), examples::pq_spec(2, 3), examples::pq_spec(3, 3),
                                           examples::lorentzian_spec(2), examples::lorentzian_spec(3)};
  for (const auto& spec : specs) {
    const auto b = examples::build(spec);
    const std::string l = spec.label() + ": ";
    o.require(b.curvature.ricci.is_zero(), l + "Ricci != 0");
    o.require(!b.curvature.chern.is_zero(), l + "Chern == 0");
    const auto inv = dynamics::verify_action_invariants(spec);
    for (const auto& e : inv.entries()) o.require(e.pass, l + e.identity);
    const dynamics::FlowModel m(spec);
    const auto x = m.flow(m.on_manifold(0.0, std::vector<cplx>(static_cast<std::size_t>(spec.n))), 3.0);
    bool fixed = x.w == cplx(0.0);
    for (const auto& z : x.z) fixed = fixed && z == cplx(0.0);
    o.require(fixed, l + "origin moves");
  }
  return o;
}

Outcome distinguishing_invariant() {
  using geodesics::Verdict;
  Outcome o;
  o.require(geodesics::equivalence_test(-1, mpq_class(-5, 4)) == Verdict::inequivalent, "(-1, -5/4) not inequivalent");
  for (const mpq_class& beta : {mpq_class(-5, 4), mpq_class(-1), mpq_class(-1, 3)})
    o.require(geodesics::equivalence_test(beta, beta) == Verdict::equivalent, "(beta, beta) not equivalent");
  return o;
}

Outcome infrastructure_properties() {
  using exterior::lie_bracket;
  Outcome o;
  proptest::Gen g(1101);
  int fails = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto w = g.form(3, g.uniform(0, 3));
    if (!exterior::d(exterior::d(w)).is_zero()) ++fails;
  }
  o.require(fails == 0, std::to_string(fails) + " d^2 failures");
  fails = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto x = g.field(2), y = g.field(2), z = g.field(2);
    if (!(lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) + lie_bracket(z, lie_bracket(x, y)))
             .is_zero())
      ++fails;
  }
  o.require(fails == 0, std::to_string(fails) + " Jacobi failures");
  fails = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto x = g.coeff(3, 3, 2, true), y = g.coeff(3, 3, 2, true), z = g.coeff(3, 3, 2, true);
    const bool ok = (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z && x * y == y * x && x + y == y + x &&
                    x - x == Coeff(3) && (x * y).conj() == x.conj() * y.conj() && x.conj().conj() == x;
    if (!ok) ++fails;
  }
  o.require(fails == 0, std::to_string(fails) + " ring-axiom failures");
  fails = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto x = g.coeff(4, 4, 3, true);
    if (algebra::parse_expr(algebra::print_expr(x), 4) != x) ++fails;
  }
  o.require(fails == 0, std::to_string(fails) + " parser round-trip failures");
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "connection reproduction", 5, connection_reproduction},
      {2, "curvature reproduction", 5, curvature_reproduction},
      {3, "pseudo-Einstein and Chern", 10, pseudo_einstein_and_chern},
      {4, "homothety and essential field", 10, homothety_and_essential_field},
      {5, "Lee transformation laws", 30, lee_transformation_laws},
      {6, "Schwarzian suite", 60, schwarzian_suite},
      {7, "leaf geodesics", 30, leaf_geodesics},
      {8, "attractor dynamics", 60, attractor_dynamics},
      {9, "family generalization", 120, family_generalization},
      {10, "distinguishing invariant", 1, distinguishing_invariant},
      {11, "infrastructure properties", 60, infrastructure_properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget_s, "over time budget");
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2d %-32s %s  %.2fs/%gs%s%s\n", c.id, c.title, o.pass ? "PASS" : "FAIL", secs, c.budget_s,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

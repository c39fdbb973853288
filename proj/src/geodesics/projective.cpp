#include "crgeom/geodesics/projective.hpp"

#include <cmath>

#include "crgeom/error.hpp"
#include "crgeom/examples/family.hpp"
#include "crgeom/pseudohermitian/curvature.hpp"

namespace crgeom::geodesics {

AffineReparameterization affine_reparameterization(const PHStructure& s, const Connection& c, const NullCurve& g,
                                                   const Coeff& upsilon) {
  const Coeff u = geodesic_coefficient(s, c, g);
  if (!u.is_zero()) throw Error(Errc::precondition, "gamma is not affinely parameterized: u = " + u.to_string());
  const CurveFrame f = curve_frame(s, g);
  const ph::Hessian hess = ph::covariant_hessian(s, c, upsilon);
  const auto ctx = g.along(s.ctx);

  AffineReparameterization r;
  const Coeff along = g.along(upsilon);
  r.upsilon_prime = g.d_zeta(along, ctx);
  r.upsilon_second = g.d_zeta(r.upsilon_prime, ctx);
  r.holomorphy_defect = g.d_zetabar(r.upsilon_prime, ctx);
  r.mixed_hessian_defect = r.holomorphy_defect;
  r.pure_hessian_defect = r.upsilon_second;
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b) {
      const Coeff& va = f.v[static_cast<std::size_t>(a)];
      const Coeff& vb = f.v[static_cast<std::size_t>(b)];
      r.mixed_hessian_defect -= va * vb.conj() * g.along(hess.mixed[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
      r.pure_hessian_defect -= va * vb * g.along(hess.pure[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    }
  r.zhat_schwarzian = (r.upsilon_second - r.upsilon_prime * r.upsilon_prime) * GaussianRational(2);
  return r;
}

namespace {

cplx at(const Coeff& f, cplx zeta) {
  algebra::NumericPoint p;
  p.z = {zeta};
  p.zbar = {std::conj(zeta)};
  return f.evaluate(p);
}

}  // namespace

ProjectiveConsistency projective_consistency(const PHStructure& s, const Connection& c, const PHStructure& s_hat,
                                             const Connection& c_hat, const Coeff& upsilon, const NullCurve& g,
                                             cplx from, cplx to, double step, int sample_every) {
  const AffineReparameterization aff = affine_reparameterization(s, c, g, upsilon);
  if (!aff.holomorphy_defect.is_zero())
    throw Error(Errc::precondition, "U' is not holomorphic along gamma: " + aff.holomorphy_defect.to_string());
  const Coeff q = projective_parameter_rhs(s, c, g);
  const Coeff q_hat_zeta = projective_parameter_rhs(s_hat, c_hat, g);
  const ComplexPath path = ComplexPath::segment(from, to);

  SchwarzianODE ode{[&](cplx z) { return at(q, z); }, 0.0, 1.0, 0.0};
  const std::vector<SchwarzianSample> base = solve_schwarzian_ode(ode, path, step, sample_every);

  // y = (zhat, zhat', U1, dU1/dzhat, U2, dU2/dzhat); Q_hat = Q_hat_zeta / zhat'^2.
  std::vector<cplx> y{0.0, 1.0, 0.0, 1.0, 1.0, 0.0};
  std::vector<SchwarzianSample> hat;
  int counter = 0;
  auto rhs = [&](cplx z, std::span<const cplx> st, std::span<cplx> ds) {
    const cplx up = at(aff.upsilon_prime, z);
    const cplx qz = at(q_hat_zeta, z);
    ds[0] = st[1];
    ds[1] = 2.0 * up * st[1];
    ds[2] = st[1] * st[3];
    ds[3] = -qz / (2.0 * st[1]) * st[2];
    ds[4] = st[1] * st[5];
    ds[5] = -qz / (2.0 * st[1]) * st[4];
  };
  integrate_rk4(
      rhs, path, step, y,
      [&](cplx z, std::span<const cplx> st) {
        if (std::abs(st[4]) < 1e-12) throw Error(Errc::pole_crossed, "pole crossed in the rescaled projective parameter");
        if (counter++ % sample_every == 0) {
          const cplx w = st[3] * st[4] - st[2] * st[5];
          hat.push_back({z, st[2] / st[4], st[1] * w / (st[4] * st[4])});
        }
      },
      sample_every);
  if (hat.size() != base.size()) throw Error(Errc::internal, "sample grids of the two runs differ");

  ProjectiveConsistency out;
  for (std::size_t i = 4; i + 4 < base.size(); ++i) {
    const cplx sp = numeric_schwarzian_at(base, i);
    const cplx sh = numeric_schwarzian_at(hat, i);
    const cplx cross = (sh - sp) / (base[i].dp * base[i].dp);
    out.samples.push_back({base[i].z, base[i].p, hat[i].p, cross});
    out.max_cross = std::max(out.max_cross, std::abs(cross));
  }
  return out;
}

std::string QuotientInvariant::deck() const {
  return "z -> exp(" + algebra::rational_to_string(exponent) + ") z";
}

QuotientInvariant quotient_projective_invariant(const mpq_class& beta) {
  if (sgn(beta) >= 0) throw Error(Errc::precondition, "quotient parameter beta must be negative");
  // The invariant leaf is the z2 axis of the (2,2) example; its Gamma weight
  // is s^k a^l with s = e^beta, a = e^alpha.
  const examples::ExampleSpec spec = examples::pq_spec(2, 2);
  const exterior::ScaleWeight w = spec.gamma.z_weights()[1];
  if (w.a != 0) throw Error(Errc::internal, "leaf weight depends on alpha");
  return {beta, mpq_class(w.s) * beta};
}

const char* verdict_name(Verdict v) { return v == Verdict::equivalent ? "equivalent" : "inequivalent"; }

Verdict equivalence_test(const mpq_class& beta, const mpq_class& beta_tilde) {
  const QuotientInvariant a = quotient_projective_invariant(beta);
  const QuotientInvariant b = quotient_projective_invariant(beta_tilde);
  return a.exponent == b.exponent ? Verdict::equivalent : Verdict::inequivalent;
}

}  // namespace crgeom::geodesics

#include "crgeom/pseudohermitian/rescale.hpp"

#include "crgeom/algebra/linear_system.hpp"
#include "crgeom/error.hpp"
#include "crgeom/exterior/serialize.hpp"

namespace crgeom::ph {

namespace {

std::vector<Coeff> raised_gradient(const PHStructure& s, const Coeff& u) {
  // U^a = h^{a bbar} Zbar_b(u)
  std::vector<Coeff> out;
  for (int a = 0; a < s.n; ++a) {
    Coeff v(s.n);
    for (int b = 0; b < s.n; ++b)
      if (!s.levi_inv(a, b).is_zero()) v += s.levi_inv(a, b) * s.frame_at(s.n + b + 1).apply(u);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Form> adapted_coframe(const PHStructure& s, const std::vector<Coeff>& up, const GaussianRational& c) {
  std::vector<Form> out;
  for (int a = 0; a < s.n; ++a) out.push_back(s.coframe[a] + (c * up[a]) * s.theta);
  return out;
}

Form admissibility_residual(const PHStructure& s, const Coeff& e, const Form& theta_hat,
                            const std::vector<Form>& coframe, const ExpContext& ctx) {
  Form r = exterior::d(theta_hat, ctx);
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b)
      if (!s.levi(a, b).is_zero())
        r -= (GaussianRational::i() * e * s.levi(a, b)) * exterior::wedge(coframe[a], coframe[b].conj());
  return r;
}

}  // namespace

Connection lee_transform(const PHStructure& old_s, const Connection& old_c, const PHStructure& new_s,
                         const Coeff& upsilon) {
  const int n = old_s.n;
  std::vector<Coeff> low;
  for (int a = 0; a < n; ++a) low.push_back(old_s.frame[a].apply(upsilon));
  const auto up = raised_gradient(old_s, upsilon);
  Connection out = Connection::zero(n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      Form w(n, 1);
      for (int g = 0; g < n; ++g) {
        Coeff hol = old_c.omega_on(b, a, old_s.frame_at(g + 1));
        if (a == b) hol += low[g];
        if (a == g) hol += low[b];
        Coeff anti = old_c.omega_on(b, a, old_s.frame_at(n + g + 1)) - old_s.levi(b, g) * up[a];
        if (!hol.is_zero()) w += hol * new_s.coframe_at(g + 1);
        if (!anti.is_zero()) w += anti * new_s.coframe_at(n + g + 1);
      }
      const VectorField br = exterior::lie_bracket(new_s.reeb, new_s.frame[b], new_s.ctx);
      const Coeff vert = exterior::evaluate(new_s.coframe[a], br);
      if (!vert.is_zero()) w += vert * new_s.theta;
      out.omega[b][a] = std::move(w);
    }
  const Hessian hs = covariant_hessian(old_s, old_c, upsilon);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.torsion[a][b] = old_c.torsion[a][b] + GaussianRational::i() * (hs.pure[a][b] - hs.first[a] * hs.first[b]);
  return out;
}

RescaleResult rescale(const PHStructure& s, const Connection& c, const Coeff& upsilon) {
  if (s.ctx.active()) throw Error(Errc::precondition, "structure is already rescaled");
  if (upsilon.arity() != s.n) throw Error(Errc::dimension_mismatch, "exponent arity does not match the structure");
  const ExpContext ctx = ExpContext::for_exponent(upsilon);
  const int n = s.n;
  // Upsilon = 0 keeps the structure literally unchanged.
  const Coeff e = upsilon.is_zero() ? Coeff::one(n) : Coeff::var(n, algebra::Var::e());
  const Form theta_hat = e * s.theta;
  const auto up = raised_gradient(s, upsilon);

  // The residual is affine in (Re c, Im c): sample c = 0, 1, i and solve.
  const Form r0 = admissibility_residual(s, e, theta_hat, adapted_coframe(s, up, 0), ctx);
  const Form r1 = admissibility_residual(s, e, theta_hat, adapted_coframe(s, up, 1), ctx) - r0;
  const Form ri = admissibility_residual(s, e, theta_hat, adapted_coframe(s, up, GaussianRational::i()), ctx) - r0;
  algebra::SparseRationalSystem sys(2);
  auto add_equations = [&](std::uint32_t mask, const algebra::Monomial& m) {
    const auto a = r1.component(mask).coeff_of(m), b = ri.component(mask).coeff_of(m),
               z = r0.component(mask).coeff_of(m);
    sys.add_equation({{0, a.re()}, {1, b.re()}}, -z.re());
    sys.add_equation({{0, a.im()}, {1, b.im()}}, -z.im());
  };
  for (const Form* f : {&r0, &r1, &ri})
    for (const auto& [mask, coeff] : f->components())
      for (const auto& t : coeff.terms()) add_equations(mask, t.mono);
  auto sol = sys.solve();
  GaussianRational cval;
  if (sol.status == algebra::SparseRationalSystem::Status::inconsistent)
    throw Error(Errc::adaptation_failed, "coframe adaptation failed: no constant c makes the coframe admissible");
  if (sol.status == algebra::SparseRationalSystem::Status::unique) {
    cval = GaussianRational(sol.values[0], sol.values[1]);
  } else {
    // A free direction exists only when the correction term vanishes; keep
    // the canonical value c = i whenever it is admissible, else c = 0.
    const Form ri_full = ri + r0;
    cval = ri_full.is_zero() ? GaussianRational::i() : GaussianRational(0);
    if (!admissibility_residual(s, e, theta_hat, adapted_coframe(s, up, cval), ctx).is_zero())
      throw Error(Errc::adaptation_failed, "coframe adaptation failed: admissible c is not unique");
  }

  RescaleResult out;
  out.c = cval;
  auto coframe = adapted_coframe(s, up, cval);
  out.report.add("dtheta_hat == i E h theta_hat^a ^ conj theta_hat^b",
                 admissibility_residual(s, e, theta_hat, coframe, ctx));
  out.structure = complete_structure(theta_hat, std::move(coframe), ctx);

  CoeffMatrix levi_defect(n, n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) levi_defect(a, b) = out.structure.levi(a, b) - e * s.levi(a, b);
  out.report.add("h_hat == E h", levi_defect);

  out.direct = solve_connection(out.structure);
  out.lee = lee_transform(s, c, out.structure, upsilon);
  out.predicted_torsion = out.lee.torsion;

  nlohmann::json omega_diff = nlohmann::json::array();
  nlohmann::json torsion_diff = nlohmann::json::array();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Form dw = out.direct.omega[a][b] - out.lee.omega[a][b];
      if (!dw.is_zero())
        omega_diff.push_back({{"a", a + 1}, {"b", b + 1}, {"difference", exterior::form_to_json(dw)}});
      const Coeff dt = out.direct.torsion[a][b] - out.predicted_torsion[a][b];
      if (!dt.is_zero()) torsion_diff.push_back({{"a", a + 1}, {"b", b + 1}, {"difference", dt.to_string()}});
    }
  out.report.add("omega_hat (direct solve) == omega_hat (Lee laws)", omega_diff.empty(), omega_diff);
  out.report.add("A_hat == A + i U_ab - i U_a U_b", torsion_diff.empty(), torsion_diff);
  out.report.add("Lee connection satisfies the structure equations",
                 verify_connection(out.structure, out.lee).is_zero(), nlohmann::json());
  return out;
}

}  // namespace crgeom::ph

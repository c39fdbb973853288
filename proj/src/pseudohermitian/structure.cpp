#include "crgeom/pseudohermitian/structure.hpp"

#include "crgeom/error.hpp"
#include "crgeom/exterior/serialize.hpp"

namespace crgeom::ph {

using algebra::Var;

Form contact_from_defining(const Coeff& phi) {
  if (!(phi.conj() == phi)) throw Error(Errc::non_real, "defining function is not real");
  if (phi.has_exp_grade()) throw Error(Errc::domain_error, "defining function carries an exponential grade");
  if (!phi.diff(Var::t()).is_zero()) throw Error(Errc::precondition, "graph part of the defining function depends on t");
  const int n = phi.arity();
  const GaussianRational half_i(0, mpq_class(1, 2));
  Form theta = GaussianRational::rational(1, 2) * Form::basis(n, 0);
  for (int j = 1; j <= n; ++j) {
    theta += half_i * (phi.diff(Var::zbar(j)) * Form::basis(n, n + j));
    theta -= half_i * (phi.diff(Var::z(j)) * Form::basis(n, j));
  }
  return theta;
}

std::vector<Form> coordinate_coframe(int n) {
  std::vector<Form> out;
  for (int j = 1; j <= n; ++j) out.push_back(Form::basis(n, j));
  return out;
}

Form PHStructure::coframe_at(int k) const {
  if (k == 0) return theta;
  if (k <= n) return coframe[static_cast<std::size_t>(k - 1)];
  return coframe[static_cast<std::size_t>(k - n - 1)].conj();
}

VectorField PHStructure::frame_at(int k) const {
  if (k == 0) return reeb;
  if (k <= n) return frame[static_cast<std::size_t>(k - 1)];
  return frame[static_cast<std::size_t>(k - n - 1)].conj();
}

namespace {

Form levi_form_of(const PHStructure& s) {
  Form w(s.n, 2);
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b) {
      if (s.levi(a, b).is_zero()) continue;
      w += (GaussianRational::i() * s.levi(a, b)) * exterior::wedge(s.coframe_at(a + 1), s.coframe_at(s.n + b + 1));
    }
  return w;
}

}  // namespace

PHStructure complete_structure(Form theta, std::vector<Form> coframe, ExpContext ctx) {
  const int n = theta.arity();
  if (theta.degree() != 1) throw Error(Errc::precondition, "contact form must have degree 1");
  if (static_cast<int>(coframe.size()) != n)
    throw Error(Errc::dimension_mismatch, "coframe must contain one form per complex coordinate");
  for (const auto& c : coframe)
    if (c.arity() != n || c.degree() != 1) throw Error(Errc::dimension_mismatch, "coframe forms must be 1-forms of the same arity");
  if (!(theta.conj() == theta)) throw Error(Errc::non_real, "contact form is not real");

  PHStructure s;
  s.n = n;
  s.theta = std::move(theta);
  s.coframe = std::move(coframe);
  s.ctx = std::move(ctx);
  const int dim = s.dim();

  CoeffMatrix m(dim, dim, n);
  for (int r = 0; r < dim; ++r) {
    const Form row = s.coframe_at(r);
    for (int k = 0; k < dim; ++k) m(r, k) = row.component(1u << k);
  }
  const auto inv = algebra::unit_pivot_inverse(m);
  if (!inv) {
    if (algebra::probably_singular(m)) throw Error(Errc::degenerate, "degenerate coframe: forms are linearly dependent");
    throw Error(Errc::non_polynomial_dual_frame, "non-polynomial dual frame: coframe matrix is not unimodular");
  }
  auto column = [&](int a) {
    VectorField x(n);
    for (int k = 0; k < dim; ++k) x[k] = (*inv)(k, a);
    return x;
  };
  s.reeb = column(0);
  for (int a = 1; a <= n; ++a) s.frame.push_back(column(a));

  const Form dtheta = exterior::d(s.theta, s.ctx);
  s.levi = CoeffMatrix(n, n, n);
  const GaussianRational minus_i = -GaussianRational::i();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s.levi(a, b) = minus_i * exterior::evaluate(dtheta, s.frame_at(a + 1), s.frame_at(n + b + 1));
  if (!(dtheta - levi_form_of(s)).is_zero())
    throw Error(Errc::inadmissible_coframe, "inadmissible coframe: dtheta is not i h theta^a ^ conj theta^b");

  const auto hinv_t = algebra::unit_pivot_inverse(s.levi.transpose());
  if (!hinv_t) throw Error(Errc::degenerate, "degenerate Levi form: no polynomial inverse");
  s.levi_inv = *hinv_t;
  s.signature = algebra::hermitian_inertia(algebra::at_origin(s.levi));
  if (s.signature.zero != 0) throw Error(Errc::degenerate, "degenerate Levi form at the origin");
  return s;
}

bool StructureResidual::is_zero() const {
  return theta_of_reeb_minus_one.is_zero() && reeb_in_dtheta.is_zero() && levi_equation.is_zero() &&
         duality_defect.is_zero() && hermitian_defect.is_zero() && inverse_defect.is_zero();
}

StructureResidual check_structure(const PHStructure& s) {
  const int n = s.n, dim = s.dim();
  StructureResidual r;
  r.theta_of_reeb_minus_one = exterior::evaluate(s.theta, s.reeb) - Coeff::one(n);
  const Form dtheta = exterior::d(s.theta, s.ctx);
  r.reeb_in_dtheta = exterior::contract(s.reeb, dtheta);
  r.levi_equation = dtheta - levi_form_of(s);
  r.duality_defect = CoeffMatrix(dim, dim, n);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      Coeff v = exterior::evaluate(s.coframe_at(a), s.frame_at(b));
      if (a == b) v -= Coeff::one(n);
      r.duality_defect(a, b) = v;
    }
  r.hermitian_defect = CoeffMatrix(n, n, n);
  r.inverse_defect = CoeffMatrix(n, n, n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      r.hermitian_defect(a, c) = s.levi(a, c).conj() - s.levi(c, a);
      // h^{a bbar} h_{c bbar} = delta^a_c
      Coeff v(n);
      for (int b = 0; b < n; ++b) v += s.levi_inv(a, b) * s.levi(c, b);
      if (a == c) v -= Coeff::one(n);
      r.inverse_defect(a, c) = v;
    }
  return r;
}

nlohmann::json structure_to_json(const PHStructure& s) {
  nlohmann::json j;
  j["arity"] = s.n;
  j["theta"] = exterior::form_to_json(s.theta);
  j["coframe"] = nlohmann::json::array();
  for (const auto& c : s.coframe) j["coframe"].push_back(exterior::form_to_json(c));
  j["reeb"] = exterior::field_to_json(s.reeb);
  j["frame"] = nlohmann::json::array();
  for (const auto& z : s.frame) j["frame"].push_back(exterior::field_to_json(z));
  nlohmann::json levi = nlohmann::json::array();
  for (int a = 0; a < s.n; ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (int b = 0; b < s.n; ++b) row.push_back(s.levi(a, b).to_string());
    levi.push_back(row);
  }
  j["levi"] = levi;
  j["signature"] = {s.signature.positive, s.signature.negative};
  if (s.ctx.active()) j["upsilon"] = s.ctx.upsilon().to_string();
  return j;
}

}  // namespace crgeom::ph

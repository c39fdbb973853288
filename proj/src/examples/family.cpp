#include "crgeom/examples/family.hpp"

#include <charconv>

#include "crgeom/error.hpp"

namespace crgeom::examples {

using algebra::GaussianRational;
using algebra::Var;
using exterior::ScaleWeight;

void validate(const QuotientParams& q) {
  if (!(4 * q.beta < q.alpha && q.alpha < 0))
    throw Error(Errc::precondition, "quotient parameters must satisfy 4*beta < alpha < 0");
}

std::string ExampleSpec::label() const {
  if (kind == Kind::lorentzian) return "lorentzian:" + std::to_string(n);
  return "pq:" + std::to_string(p) + "," + std::to_string(q);
}

namespace {

Coeff zz(int n, int j, int k) { return Coeff::var(n, Var::z(j)) * Coeff::var(n, Var::zbar(k)); }

void finish(ExampleSpec& s, const std::vector<ScaleWeight>& zw) {
  const int n = s.n;
  s.quartic = zz(n, 1, 1).pow(2);
  s.phi = s.hermitian + s.quartic;
  s.levi_matrix = CoeffMatrix(n, n, n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      s.levi_matrix(a - 1, b - 1) = Coeff::constant(n, s.hermitian.coeff_of(algebra::Monomial::of(Var::z(a)) *
                                                                            algebra::Monomial::of(Var::zbar(b))));
  s.gamma = exterior::DiagonalAction({4, 0}, zw);
  s.essential = exterior::VectorField(n);
  s.essential[0] = Coeff::constant(n, -4) * Coeff::var(n, Var::t());
  for (int j = 1; j <= n; ++j) {
    const GaussianRational w(-zw[j - 1].s);
    if (w.is_zero()) continue;
    s.essential[j] = w * Coeff::var(n, Var::z(j));
    s.essential[n + j] = w * Coeff::var(n, Var::zbar(j));
  }
}

}  // namespace

ExampleSpec pq_spec(int p, int q, QuotientParams quotient) {
  if (p < 2 || q < p) throw Error(Errc::precondition, "signature (p,q) requires 2 <= p <= q");
  if (p + q > 6) throw Error(Errc::precondition, "signature cap exceeded: p + q <= 6");
  validate(quotient);
  ExampleSpec s;
  s.kind = Kind::pq;
  s.p = p, s.q = q, s.n = p + q;
  s.quotient = quotient;
  const int n = s.n;
  s.hermitian = zz(n, 1, 2) + zz(n, 2, 1) + zz(n, 3, 4) + zz(n, 4, 3);
  for (int j = 5; j <= p + 2; ++j) s.hermitian += zz(n, j, j);
  for (int k = p + 3; k <= p + q; ++k) s.hermitian -= zz(n, k, k);
  std::vector<ScaleWeight> zw{{1, 0}, {3, 0}, {4, -1}, {0, 1}};
  for (int j = 5; j <= n; ++j) zw.push_back({2, 0});
  finish(s, zw);
  return s;
}

ExampleSpec lorentzian_spec(int n) {
  if (n < 2 || n > 5) throw Error(Errc::precondition, "lorentzian dimension must satisfy 2 <= n <= 5");
  ExampleSpec s;
  s.kind = Kind::lorentzian;
  s.p = 1, s.q = n - 1, s.n = n;
  s.inferred = n > 2;
  s.hermitian = zz(n, 1, 2) + zz(n, 2, 1);
  for (int k = 3; k <= n; ++k) s.hermitian -= zz(n, k, k);
  std::vector<ScaleWeight> zw{{1, 0}, {3, 0}};
  for (int j = 3; j <= n; ++j) zw.push_back({2, 0});
  finish(s, zw);
  return s;
}

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error(Errc::precondition, "malformed signature '" + std::string(s) + "'");
  return v;
}

}  // namespace

ExampleSpec spec_from_label(const std::string& label) {
  std::string_view v = label;
  if (v.rfind("lorentzian:", 0) == 0) return lorentzian_spec(parse_int(v.substr(11)));
  if (v.rfind("pq:", 0) == 0) v.remove_prefix(3);
  const auto comma = v.find(',');
  if (comma == std::string_view::npos) throw Error(Errc::precondition, "malformed signature '" + label + "'");
  return pq_spec(parse_int(v.substr(0, comma)), parse_int(v.substr(comma + 1)));
}

ph::PHStructure structure_of(const ExampleSpec& spec) {
  return ph::complete_structure(ph::contact_from_defining(spec.phi), ph::coordinate_coframe(spec.n));
}

ExampleBuild build(const ExampleSpec& spec) {
  ExampleBuild b;
  b.spec = spec;
  b.structure = structure_of(spec);
  if (b.structure.signature.positive != spec.p || b.structure.signature.negative != spec.q)
    throw Error(Errc::internal, "Levi signature at the origin differs from the requested one");
  b.connection = ph::solve_connection(b.structure);
  b.curvature = ph::curvature(b.structure, b.connection);
  if (!b.curvature.ricci.is_zero()) throw Error(Errc::internal, "self-check failed: Ricci curvature is not zero");
  if (b.curvature.chern.is_zero()) throw Error(Errc::internal, "self-check failed: Chern tensor vanishes");
  return b;
}

ExampleBuild build_example(int p, int q) { return build(pq_spec(p, q)); }
ExampleBuild build_lorentzian(int n) { return build(lorentzian_spec(n)); }

Coeff normal_form_tracefree_check(const Coeff& quartic, const CoeffMatrix& h) {
  const int n = h.rows();
  const auto inv_t = algebra::unit_pivot_inverse(h.transpose());
  if (!inv_t) throw Error(Errc::degenerate, "degenerate hermitian form");
  Coeff out(quartic.arity());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!(*inv_t)(a, b).is_zero())
        out += (*inv_t)(a, b) * quartic.diff(Var::zbar(b + 1)).diff(Var::z(a + 1));
  return out;
}

nlohmann::json spec_to_json(const ExampleSpec& spec) {
  nlohmann::json j;
  j["label"] = spec.label();
  j["signature"] = {spec.p, spec.q};
  j["arity"] = spec.n;
  j["defining_function"] = "Im(w) - (" + spec.phi.to_string() + ")";
  auto weight = [](ScaleWeight w) {
    return Coeff::monomial(0, algebra::Monomial::of(Var::s(), w.s) * algebra::Monomial::of(Var::a(), w.a)).to_string();
  };
  nlohmann::json table;
  table["t"] = weight(spec.gamma.t_weight());
  for (int j2 = 0; j2 < spec.n; ++j2) table["z" + std::to_string(j2 + 1)] = weight(spec.gamma.z_weights()[j2]);
  j["weights"] = table;
  j["essential_field"] = spec.essential.to_string();
  j["quotient"] = {{"alpha", spec.quotient.alpha.get_str()}, {"beta", spec.quotient.beta.get_str()}};
  if (spec.inferred) j["inferred"] = "signature (1,n-1) extension by negative squares with weight s^2";
  return j;
}

}  // namespace crgeom::examples

#include <gtest/gtest.h>

#include "crgeom/algebra/parser.hpp"
#include "crgeom/error.hpp"
#include "crgeom/examples/family.hpp"
#include "crgeom/pseudohermitian/rescale.hpp"
#include "generators.hpp"

using namespace crgeom;
using namespace crgeom::ph;
using algebra::parse_expr;

namespace {

Coeff P(const char* s, int n = 4) { return parse_expr(s, n); }
Form dx(int k, int n = 4) { return Form::basis(n, k); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal;
}

Form paper_theta() {
  const int n = 4;
  Form th = GaussianRational::rational(1, 2) * dx(0);
  const GaussianRational hi(0, mpq_class(1, 2));
  th += hi * (P("z1") * dx(n + 2) + P("z2") * dx(n + 1) + P("z3") * dx(n + 4) + P("z4") * dx(n + 3));
  th -= hi * (P("zb1") * dx(2) + P("zb2") * dx(1) + P("zb3") * dx(4) + P("zb4") * dx(3));
  th -= GaussianRational::i() * (P("z1*zb1^2") * dx(1) - P("z1^2*zb1") * dx(n + 1));
  return th;
}

const PHStructure& s22() {
  static const PHStructure s = complete_structure(paper_theta(), coordinate_coframe(4));
  return s;
}

const Connection& c22() {
  static const Connection c = solve_connection(s22());
  return c;
}

PHStructure heisenberg() {
  const int n = 2;
  Form th = GaussianRational::rational(1, 2) * dx(0, n);
  const GaussianRational hi(0, mpq_class(1, 2));
  th += hi * (P("z1", n) * dx(4, n) + P("z2", n) * dx(3, n) - P("zb1", n) * dx(2, n) - P("zb2", n) * dx(1, n));
  return complete_structure(th, coordinate_coframe(n));
}

}  // namespace

TEST(ContactForm, FromDefiningFunction) {
  const auto spec = examples::pq_spec(2, 2);
  EXPECT_EQ(contact_from_defining(spec.phi), paper_theta());
  EXPECT_EQ(contact_from_defining(Coeff(4)), GaussianRational::rational(1, 2) * dx(0));
  EXPECT_EQ(code_of([] { contact_from_defining(P("i*z1*zb2")); }), Errc::non_real);
}

TEST(Structure, PaperExample) {
  const auto& s = s22();
  VectorField t(4);
  t[0] = P("2");
  EXPECT_EQ(s.reeb, t);
  VectorField z2 = VectorField::basis(4, 2);
  z2[0] = P("i*zb1");
  EXPECT_EQ(s.frame[1], z2);
  VectorField z1 = VectorField::basis(4, 1);
  z1[0] = P("i*zb2 + 2*i*z1*zb1^2");
  EXPECT_EQ(s.frame[0], z1);
  EXPECT_EQ(s.levi(0, 1), P("1"));
  EXPECT_EQ(s.levi(1, 0), P("1"));
  EXPECT_EQ(s.levi(2, 3), P("1"));
  EXPECT_EQ(s.levi(3, 2), P("1"));
  EXPECT_EQ(s.levi(0, 0), P("4*z1*zb1"));
  EXPECT_TRUE(s.levi(1, 1).is_zero());
  EXPECT_EQ(s.signature.positive, 2);
  EXPECT_EQ(s.signature.negative, 2);
  EXPECT_TRUE(check_structure(s).is_zero());
}

TEST(Structure, Heisenberg) {
  const auto s = heisenberg();
  EXPECT_EQ(s.levi(0, 1), P("1", 2));
  EXPECT_EQ(s.levi(1, 0), P("1", 2));
  EXPECT_TRUE(s.levi(0, 0).is_zero());
  EXPECT_EQ(s.signature.positive, 1);
  EXPECT_EQ(s.signature.negative, 1);
}

TEST(Structure, Errors) {
  EXPECT_EQ(code_of([] { complete_structure(paper_theta(), {dx(1), dx(1), dx(3), dx(4)}); }), Errc::degenerate);
  EXPECT_EQ(code_of([] { complete_structure(paper_theta(), {P("1 + z1") * dx(1), dx(2), dx(3), dx(4)}); }),
            Errc::non_polynomial_dual_frame);
  // dz1 + dt has a non-constant determinant against theta.
  EXPECT_EQ(code_of([] { complete_structure(paper_theta(), {dx(1) + dx(0), dx(2), dx(3), dx(4)}); }),
            Errc::non_polynomial_dual_frame);
  // Mixing in dzb2 produces a (0,2) part of dtheta.
  EXPECT_EQ(code_of([] { complete_structure(paper_theta(), {dx(1) + dx(6), dx(2), dx(3), dx(4)}); }),
            Errc::inadmissible_coframe);
  EXPECT_EQ(code_of([] { complete_structure(GaussianRational::i() * paper_theta(), coordinate_coframe(4)); }),
            Errc::non_real);
  // theta = dt/2 alone has zero Levi form.
  EXPECT_EQ(code_of([] { complete_structure(GaussianRational::rational(1, 2) * dx(0), coordinate_coframe(4)); }),
            Errc::degenerate);
}

TEST(Connection, PaperExample) {
  const auto& c = c22();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == 0 && b == 1) EXPECT_EQ(c.omega[a][b], P("4*zb1") * dx(1));
      else EXPECT_TRUE(c.omega[a][b].is_zero()) << a << b << c.omega[a][b].to_string();
      EXPECT_TRUE(c.torsion[a][b].is_zero());
    }
  EXPECT_TRUE(verify_connection(s22(), c).is_zero());
}

TEST(Connection, Heisenberg) {
  const auto s = heisenberg();
  const auto c = solve_connection(s);
  for (auto& row : c.omega)
    for (auto& w : row) EXPECT_TRUE(w.is_zero());
  EXPECT_TRUE(c.torsion_free());
  EXPECT_TRUE(verify_connection(s, Connection::zero(2)).is_zero());
}

TEST(Connection, VerifyRejectsZero) {
  const auto r = verify_connection(s22(), Connection::zero(4));
  EXPECT_FALSE(r.is_zero());
  EXPECT_EQ(r.metric[0][0], P("4*zb1") * dx(1) + P("4*z1") * dx(5));
}

TEST(Connection, DegreeInfo) {
  SolveInfo info;
  solve_connection(s22(), &info);
  EXPECT_EQ(info.data_degree, 3);
  EXPECT_EQ(info.degree_bound, 7);
}

TEST(Connection, DegreeBoundExceeded) {
  // A real graph term of degree 14 pushes the bound past the cap.
  const Coeff phi = P("z1*zb2 + z2*zb1", 2) + parse_expr("z1^7*zb1^7", 2);
  const auto s = complete_structure(contact_from_defining(phi), coordinate_coframe(2));
  EXPECT_EQ(code_of([&] { solve_connection(s); }), Errc::degree_bound_exceeded);
}

TEST(Curvature, PaperExample) {
  const auto k = curvature(s22(), c22());
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int r = 0; r < 4; ++r)
        for (int q = 0; q < 4; ++q) {
          if (a == 0 && b == 1 && r == 0 && q == 0) EXPECT_EQ(k.R(a, b, r, q), P("-4"));
          else EXPECT_TRUE(k.R(a, b, r, q).is_zero());
        }
  EXPECT_TRUE(k.ricci.is_zero());
  EXPECT_TRUE(k.scalar.is_zero());
  EXPECT_EQ(k.chern, k.R);
  EXPECT_FALSE(k.chern.is_zero());
  EXPECT_EQ(chern_image(k), std::vector<int>{1});
}

TEST(Curvature, FlatAndTorsion) {
  const auto s = heisenberg();
  const auto k = curvature(s, solve_connection(s));
  EXPECT_TRUE(k.R.is_zero());
  EXPECT_TRUE(k.chern.is_zero());
  EXPECT_TRUE(chern_image(k).empty());
  Connection c = c22();
  c.torsion[1][1] = P("1");
  EXPECT_EQ(code_of([&] { curvature(s22(), c); }), Errc::torsion_unsupported);
}

TEST(Curvature, ChernTracesVanishOnRandomTensors) {
  proptest::Gen g(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = g.uniform(2, 4);
    CoeffMatrix h(n, n, n);
    // Unimodular hermitian h: hyperbolic pairs plus a diagonal sign.
    for (int a = 0; a + 1 < n; a += 2) h(a, a + 1) = h(a + 1, a) = Coeff::one(n);
    if (n % 2) h(n - 1, n - 1) = Coeff::constant(n, g.coin() ? 1 : -1);
    const GaussianRational x = g.scalar();
    h(0, 0) = Coeff::constant(n, x.re());
    const auto hinv = *algebra::unit_pivot_inverse(h.transpose());
    Tensor4 raw(n), low(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) raw(a, b, p, q) = g.coeff(n, 1, 1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) low(a, b, p, q) = raw(a, b, p, q) + raw(p, b, a, q) + raw(a, q, p, b) + raw(p, q, a, b);
    const auto s = chern_part(low, h, hinv);
    for (const auto& t : traces(s, hinv)) ASSERT_TRUE(t.is_zero());
  }
}

TEST(Hessian, Examples) {
  const auto h = covariant_hessian(s22(), c22(), P("z2 + zb2"));
  EXPECT_EQ(h.first[1], P("1"));
  EXPECT_TRUE(h.first[0].is_zero());
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      EXPECT_TRUE(h.mixed[a][b].is_zero());
      // omega_1^2(Z_1) u_2 survives in the pure part.
      if (a == 0 && b == 0) EXPECT_EQ(h.pure[a][b], P("-4*zb1"));
      else EXPECT_TRUE(h.pure[a][b].is_zero());
    }
  const auto c = covariant_hessian(s22(), c22(), P("7"));
  for (int a = 0; a < 4; ++a) {
    EXPECT_TRUE(c.first[a].is_zero());
    for (int b = 0; b < 4; ++b) EXPECT_TRUE(c.pure[a][b].is_zero() && c.mixed[a][b].is_zero());
  }
  const auto q = covariant_hessian(s22(), c22(), P("z1*zb1"));
  EXPECT_EQ(q.first[0], P("zb1"));
  EXPECT_EQ(q.mixed[0][0], P("1"));
}

TEST(Rescale, Identity) {
  const auto r = rescale(s22(), c22(), Coeff(4));
  EXPECT_EQ(r.structure.theta, s22().theta);
  EXPECT_EQ(r.structure.coframe, s22().coframe);
  EXPECT_TRUE(r.report.all_pass());
}

TEST(Rescale, PluriharmonicExponent) {
  const auto r = rescale(s22(), c22(), P("z2 + zb2"));
  EXPECT_EQ(r.c, GaussianRational::i());
  for (const auto& e : r.report.entries()) EXPECT_TRUE(e.pass) << e.identity << " " << e.residual.dump();
  EXPECT_TRUE(verify_connection(r.structure, r.direct).is_zero());
  EXPECT_EQ(r.direct.torsion[1][1], -GaussianRational::i() * Coeff::one(4));
  EXPECT_EQ(r.direct.torsion[0][0], P("-4*i*zb1"));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (!((a == 1 && b == 1) || (a == 0 && b == 0))) EXPECT_TRUE(r.direct.torsion[a][b].is_zero());
}

TEST(Rescale, Errors) {
  EXPECT_EQ(code_of([] { rescale(s22(), c22(), P("z2")); }), Errc::non_real);
}

TEST(Examples, TraceFreeCheck) {
  const auto spec = examples::pq_spec(2, 2);
  EXPECT_TRUE(examples::normal_form_tracefree_check(spec.quartic, spec.levi_matrix).is_zero());
  EXPECT_EQ(examples::normal_form_tracefree_check(spec.quartic, CoeffMatrix::identity(4, 4)), P("4*z1*zb1"));
  EXPECT_TRUE(examples::normal_form_tracefree_check(Coeff(4), spec.levi_matrix).is_zero());
}

TEST(Examples, Family) {
  const auto b = examples::build_example(2, 3);
  EXPECT_EQ(b.structure.levi(4, 4), parse_expr("-1", 5));
  EXPECT_EQ(b.spec.gamma.z_weights()[4], (exterior::ScaleWeight{2, 0}));
  EXPECT_EQ(b.connection.omega[0][1], parse_expr("4*zb1", 5) * Form::basis(5, 1));
  for (const auto& t : traces(b.curvature.chern_lower, b.structure.levi_inv)) EXPECT_TRUE(t.is_zero());
  EXPECT_EQ(code_of([] { examples::build_example(1, 1); }), Errc::precondition);
  EXPECT_EQ(code_of([] { examples::build_example(3, 4); }), Errc::precondition);
}

TEST(Examples, Lorentzian) {
  const auto b = examples::build_lorentzian(2);
  EXPECT_EQ(b.structure.signature.positive, 1);
  EXPECT_EQ(b.structure.signature.negative, 1);
  EXPECT_EQ(b.connection.omega[0][1], parse_expr("4*zb1", 2) * Form::basis(2, 1));
  EXPECT_EQ(b.curvature.R(0, 1, 0, 0), parse_expr("-4", 2));
  const auto b3 = examples::build_lorentzian(3);
  EXPECT_EQ(b3.structure.signature.negative, 2);
  EXPECT_TRUE(b3.spec.inferred);
  EXPECT_EQ(code_of([] { examples::build_lorentzian(6); }), Errc::precondition);
}

TEST(Examples, QuotientParameters) {
  EXPECT_NO_THROW(examples::validate({}));
  EXPECT_EQ(code_of([] { examples::validate({mpq_class(-5), mpq_class(-1)}); }), Errc::precondition);
}

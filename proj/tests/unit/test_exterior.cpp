#include <gtest/gtest.h>

#include "crgeom/algebra/parser.hpp"
#include "crgeom/error.hpp"
#include "crgeom/exterior/diagonal_action.hpp"
#include "crgeom/exterior/serialize.hpp"
#include "generators.hpp"

using namespace crgeom;
using namespace crgeom::exterior;
using algebra::parse_expr;

namespace {

constexpr int n = 4;
Coeff P(const char* s) { return parse_expr(s, n); }
Form dx(int k) { return Form::basis(n, k); }
Form dz(int j) { return dx(j); }
Form dzb(int j) { return dx(n + j); }
VectorField dd(int k) { return VectorField::basis(n, k); }

Form theta() {
  Form th = GaussianRational::rational(1, 2) * dx(0);
  const GaussianRational hi(0, mpq_class(1, 2));
  th += hi * (P("z1") * dzb(2) + P("z2") * dzb(1) + P("z3") * dzb(4) + P("z4") * dzb(3));
  th -= hi * (P("zb1") * dz(2) + P("zb2") * dz(1) + P("zb3") * dz(4) + P("zb4") * dz(3));
  th -= GaussianRational::i() * (P("z1*zb1^2") * dz(1) - P("z1^2*zb1") * dzb(1));
  return th;
}

VectorField Zf(int a) {
  static const char* tcoef[] = {"i*(zb2 + 2*z1*zb1^2)", "i*zb1", "i*zb4", "i*zb3"};
  VectorField z = dd(a);
  z[0] = P(tcoef[a - 1]);
  return z;
}

VectorField essential_field() {
  VectorField x(n);
  x[0] = P("-4*t");
  const char* c[] = {"-1", "-3", "-4", "0"};
  for (int j = 1; j <= n; ++j) {
    x[j] = P(c[j - 1]) * Coeff::var(n, algebra::Var::z(j));
    x[n + j] = P(c[j - 1]) * Coeff::var(n, algebra::Var::zbar(j));
  }
  return x;
}

DiagonalAction gamma_action() {
  return DiagonalAction({4, 0}, {{1, 0}, {3, 0}, {4, -1}, {0, 1}});
}

}  // namespace

TEST(Wedge, Basics) {
  EXPECT_TRUE(wedge(dz(1), dz(1)).is_zero());
  EXPECT_TRUE((wedge(dz(1), dzb(2)) + wedge(dzb(2), dz(1))).is_zero());
  EXPECT_EQ(wedge(P("zb1") * dz(1), P("z1") * dzb(1)), P("z1*zb1") * wedge(dz(1), dzb(1)));
  EXPECT_THROW(wedge(Form::basis(2, 0), dz(1)), Error);
}

TEST(ExteriorDerivative, Examples) {
  EXPECT_EQ(d(P("4*zb1") * dz(1)), P("-4") * wedge(dz(1), dzb(1)));
  EXPECT_TRUE(d(dx(0)).is_zero());
  Form expected = GaussianRational::i() * (wedge(dz(1), dzb(2)) + wedge(dz(2), dzb(1)) + wedge(dz(3), dzb(4)) +
                                           wedge(dz(4), dzb(3))) +
                  P("4*i*z1*zb1") * wedge(dz(1), dzb(1));
  EXPECT_EQ(d(theta()), expected);
}

TEST(ExteriorDerivative, ExponentialGrade) {
  auto ctx = ExpContext::for_exponent(P("z2 + zb2"));
  const Form f = Form::function(P("E"));
  EXPECT_EQ(d(f, ctx), P("E") * (dz(2) + dzb(2)));
  EXPECT_TRUE(d(d(P("E*z1") * dzb(3), ctx), ctx).is_zero());
}

TEST(Contract, Examples) {
  EXPECT_EQ(contract(dd(0), dx(0)), Form::function(Coeff::one(n)));
  EXPECT_EQ(evaluate(d(theta()), Zf(1), Zf(1).conj()), P("4*i*z1*zb1"));
  EXPECT_TRUE(evaluate(theta(), Zf(2)).is_zero());
  EXPECT_THROW(contract(dd(0), Form::function(P("1"))), Error);
  std::vector<VectorField> three{dd(0), dd(1), dd(2)};
  EXPECT_THROW(evaluate(d(theta()), three), Error);
}

TEST(Contract, CartanOracleForDTheta) {
  const auto th = theta();
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const auto X = Zf(a), Y = Zf(b).conj();
      const Coeff oracle = X.apply(evaluate(th, Y)) - Y.apply(evaluate(th, X)) - evaluate(th, lie_bracket(X, Y));
      EXPECT_EQ(evaluate(d(th), X, Y), oracle);
    }
}

TEST(LieBracket, Examples) {
  EXPECT_TRUE(lie_bracket(Zf(2), Zf(2).conj()).is_zero());
  VectorField expected(n);
  expected[0] = P("-8*i*z1*zb1");
  EXPECT_EQ(lie_bracket(Zf(1), Zf(1).conj()), expected);
  EXPECT_TRUE(lie_bracket(essential_field(), essential_field()).is_zero());
  EXPECT_TRUE(Zf(1).is_type_10());
  EXPECT_FALSE(Zf(1).conj().is_type_10());
}

TEST(LieDerivative, Examples) {
  const auto X = essential_field();
  const auto th = theta();
  EXPECT_EQ(lie_derivative(X, th), P("-4") * th);
  EXPECT_TRUE(lie_derivative(dd(0), th).is_zero());
  const Form vol = wedge(th, wedge_power(d(th), 4));
  EXPECT_FALSE(vol.is_zero());
  EXPECT_EQ(lie_derivative(X, vol), P("-20") * vol);
}

TEST(Pullback, Examples) {
  const auto g = gamma_action();
  EXPECT_EQ(pullback(g, theta()), P("s^4") * theta());
  EXPECT_EQ(pullback(g, dz(4)), P("a") * dz(4));
  const auto th = theta();
  EXPECT_EQ(pullback(DiagonalAction::identity(n), th), th);
}

TEST(Pullback, CommutesWithDAndWedge) {
  const auto g = gamma_action();
  proptest::Gen gen(7);
  for (int k = 0; k < 100; ++k) {
    auto a = gen.form(n, gen.uniform(0, 2)), b = gen.form(n, gen.uniform(0, 2));
    ASSERT_EQ(pullback(g, d(a)), d(pullback(g, a)));
    ASSERT_EQ(pullback(g, wedge(a, b)), wedge(pullback(g, a), pullback(g, b)));
  }
}

TEST(Pullback, Composition) {
  const auto g = gamma_action();
  const DiagonalAction h({1, 2}, {{0, 1}, {2, 0}, {-1, 0}, {1, 1}});
  proptest::Gen gen(8);
  for (int k = 0; k < 100; ++k) {
    auto w = gen.form(n, gen.uniform(0, 3));
    ASSERT_EQ(pullback(g.compose(h), w), pullback(h, pullback(g, w)));
  }
}

TEST(Serialize, RoundTrip) {
  const auto th = theta();
  const auto j = form_to_json(th);
  EXPECT_EQ(j["degree"], 1);
  EXPECT_EQ(form_from_json(j, n), th);
  const auto dth = d(th);
  EXPECT_EQ(form_from_json(form_to_json(dth), n), dth);
  nlohmann::json swapped = {{"degree", 2}, {"terms", {{{"index", {"dzb1", "dz1"}}, {"coeff", "1"}}}}};
  EXPECT_EQ(form_from_json(swapped, n), -wedge(dz(1), dzb(1)));
}

TEST(Property, DSquaredZero) {
  proptest::Gen g(4);
  for (int k = 0; k < 500; ++k) {
    auto w = g.form(3, g.uniform(0, 3));
    ASSERT_TRUE(d(d(w)).is_zero());
  }
}

TEST(Property, Jacobi) {
  proptest::Gen g(5);
  for (int k = 0; k < 200; ++k) {
    auto x = g.field(2), y = g.field(2), z = g.field(2);
    auto jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) + lie_bracket(z, lie_bracket(x, y));
    ASSERT_TRUE(jac.is_zero());
    ASSERT_EQ(lie_bracket(x, y), Coeff::constant(2, -1) * lie_bracket(y, x));
  }
}

TEST(Property, CartanAndAntiderivation) {
  proptest::Gen g(6);
  for (int k = 0; k < 200; ++k) {
    auto x = g.field(2);
    auto a = g.form(2, g.uniform(1, 2)), b = g.form(2, g.uniform(1, 2));
    ASSERT_EQ(lie_derivative(x, d(a)), d(lie_derivative(x, a)));
    const GaussianRational sign = a.degree() % 2 ? -1 : 1;
    ASSERT_EQ(contract(x, wedge(a, b)), wedge(contract(x, a), b) + sign * wedge(a, contract(x, b)));
  }
}

TEST(Property, LieDerivativeMatchesFlowDerivative) {
  // Numeric cross-check of L_X theta against the closed-form flow pullback.
  const auto X = essential_field();
  const auto th = theta();
  const auto lx = lie_derivative(X, th);
  const double w[] = {1, 3, 4, 0};
  proptest::Gen g(9);
  const double eps = 1e-4;
  for (int k = 0; k < 20; ++k) {
    std::vector<std::complex<double>> z(n);
    for (auto& c : z) c = {g.real(-1, 1), g.real(-1, 1)};
    const auto p = algebra::NumericPoint::real(g.real(-1, 1), z);
    for (int c = 0; c < basis_size(n); ++c) {
      auto pulled = [&](double tau) {
        auto q = p;
        q.t *= std::exp(-4 * tau);
        for (int j = 0; j < n; ++j) {
          q.z[j] *= std::exp(-w[j] * tau);
          q.zbar[j] *= std::exp(-w[j] * tau);
        }
        const double scale = c == 0 ? std::exp(-4 * tau) : std::exp(-w[(c - 1) % n] * tau);
        return th.component(1u << c).evaluate(q) * scale;
      };
      const auto fd = (pulled(eps) - pulled(-eps)) / (2 * eps);
      EXPECT_LT(std::abs(fd - lx.component(1u << c).evaluate(p)), 1e-6);
    }
  }
}

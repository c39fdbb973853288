#include <gtest/gtest.h>

#include <sstream>

#include "crgeom/dynamics/flow.hpp"
#include "crgeom/error.hpp"

using namespace crgeom;
using namespace crgeom::dynamics;

namespace {

const examples::ExampleSpec& spec22() {
  static const examples::ExampleSpec s = examples::pq_spec(2, 2);
  return s;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal;
}

}  // namespace

TEST(Flow, ClosedForm) {
  const FlowModel m(spec22());
  EXPECT_EQ(m.rates(), (std::vector<int>{4, 1, 3, 4, 0}));
  EXPECT_EQ(m.section_index(), 3);
  const FlowState x = m.on_manifold(0.3, {cplx(0.2, 0.1), cplx(-0.4, 0.3), cplx(0.5, -0.5), cplx(0.6, 0.1)});
  EXPECT_FALSE(x.flagged);
  EXPECT_LT(x.residual, 1e-15);
  const FlowState same = m.flow(x, 0.0);
  EXPECT_EQ(same.w, x.w);
  EXPECT_EQ(same.z, x.z);
  const FlowState y = m.flow(x, 10.0);
  EXPECT_NEAR(std::abs(y.z[0]) / std::abs(x.z[0]), std::exp(-10.0), 1e-12 * std::exp(-10.0));
  EXPECT_NEAR(y.t(), 0.3 * std::exp(-40.0), 1e-12 * 0.3 * std::exp(-40.0));
  EXPECT_EQ(y.z[3], x.z[3]);
}

TEST(Flow, FixedSet) {
  const FlowModel m(spec22());
  const FlowState x = m.on_manifold(0.0, {0.0, 0.0, 0.0, cplx(0.3, 0.7)});
  for (double tau : {0.5, 3.0, 20.0}) {
    const FlowState y = m.flow(x, tau);
    EXPECT_EQ(y.w, x.w);
    EXPECT_EQ(y.z, x.z);
  }
}

TEST(Flow, ResidualPreservedProperty) {
  const FlowModel m(spec22());
  const QuotientSpec q;
  for (int s = 0; s < 200; ++s) {
    const FlowState x = random_seed(m, q, 7, s);
    for (double tau = 0; tau <= 20.0; tau += 0.5) EXPECT_LT(m.flow(x, tau).residual, 1e-9);
  }
}

TEST(Flow, Rk4AgreesWithClosedForm) {
  const FlowModel m(spec22());
  const FlowState x = random_seed(m, QuotientSpec{}, 3, 0);
  const FlowState a = m.flow_rk4(x, 2.0, 400);
  const FlowState b = m.flow(x, 2.0);
  EXPECT_LT(std::abs(a.w - b.w), 1e-9);
  for (int j = 0; j < 4; ++j) EXPECT_LT(std::abs(a.z[static_cast<std::size_t>(j)] - b.z[static_cast<std::size_t>(j)]), 1e-9);
}

TEST(Normalize, WindowAndDeckPower) {
  const FlowModel m(spec22());
  const QuotientSpec q;
  const double centre = std::exp(q.alpha / 2);
  const FlowState in = m.on_manifold(0.1, {0.1, 0.2, 0.3, centre});
  EXPECT_EQ(m.normalize(in, q).deck_power, 0);
  const FlowState far = m.on_manifold(0.1, {0.1, 0.2, 0.3, std::exp(2 * q.alpha) * centre});
  const FlowState n = m.normalize(far, q);
  EXPECT_EQ(n.deck_power, -2);
  EXPECT_NEAR(std::abs(n.z[3]), centre, 1e-14);
  EXPECT_LT(n.residual, 1e-12);
  EXPECT_EQ(code_of([&] { m.normalize(m.on_manifold(0, {0.1, 0.2, 0.3, 0.0}), q); }), Errc::precondition);
  EXPECT_EQ(code_of([] { QuotientSpec{-1.0, -0.1}.validate(); }), Errc::precondition);
}

TEST(Normalize, UniqueAndCommutesWithFlowProperty) {
  const FlowModel m(spec22());
  const QuotientSpec q{-0.7, -1.0, 1.0};
  for (int s = 0; s < 200; ++s) {
    FlowState x = random_seed(m, q, 5, s);
    x = m.deck(x, q, (s % 9) - 4);
    const FlowState n = m.normalize(x, q);
    const double mod = std::abs(n.z[3]);
    EXPECT_GE(mod, std::exp(q.alpha));
    EXPECT_LT(mod, 1.0);
    // Any other deck power leaves the window.
    for (int k : {-1, 1}) {
      const double other = std::abs(m.deck(n, q, k).z[3]);
      EXPECT_TRUE(other < std::exp(q.alpha) || other >= 1.0);
    }
    const FlowState a = m.normalize(m.flow(x, 3.0), q);
    const FlowState b = m.flow(m.normalize(x, q), 3.0);
    EXPECT_EQ(a.deck_power, b.deck_power);
    EXPECT_LT(std::abs(a.w - b.w), 1e-12);
    for (int j = 0; j < 4; ++j) EXPECT_LT(std::abs(a.z[static_cast<std::size_t>(j)] - b.z[static_cast<std::size_t>(j)]), 1e-12);
  }
}

TEST(Attractor, PaperParameters) {
  AttractorOptions opt;
  const AttractorReport r = attractor_report(spec22(), QuotientSpec::from(spec22().quotient), opt);
  ASSERT_EQ(r.fits.size(), 5u);
  const double expected[] = {4, 1, 3, 4, 0};
  for (std::size_t c = 0; c < 5; ++c) {
    EXPECT_NEAR(r.fits[c].rate_mean, expected[c], 0.01) << r.fits[c].name;
    EXPECT_TRUE(r.fits[c].within);
  }
  EXPECT_NEAR(r.coordinate_volume_rate, -12.0, 1e-6);
  EXPECT_NEAR(r.lebesgue_volume_rate, -20.0, 1e-6);
  EXPECT_EQ(r.contact_volume_rate, algebra::GaussianRational(-20));
  EXPECT_LT(r.residual_max, 1e-9);
  EXPECT_LT(r.commutation_defect, 1e-12);
  EXPECT_TRUE(r.pass);
  const auto j = r.to_json();
  EXPECT_EQ(j["seeds"], 100);
  EXPECT_TRUE(j.contains("rates") && j.contains("r_squared") && j.contains("params"));
}

TEST(Attractor, Reproducible) {
  AttractorOptions opt;
  opt.seeds = 10;
  opt.rk4_cross_check = true;
  const auto a = attractor_report(spec22(), QuotientSpec{}, opt).to_json();
  const auto b = attractor_report(spec22(), QuotientSpec{}, opt).to_json();
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_LT(a["rk4_max_defect"].get<double>(), 1e-9);
  opt.seed = 1;
  EXPECT_NE(attractor_report(spec22(), QuotientSpec{}, opt).to_json().dump(), a.dump());
}

TEST(Trajectory, Csv) {
  const FlowModel m(spec22());
  const auto traj = trajectory(m, QuotientSpec{}, random_seed(m, QuotientSpec{}, 0, 0), 1.0, 0.25);
  ASSERT_EQ(traj.size(), 5u);
  std::ostringstream os;
  write_csv(os, traj);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')),
            "tau,t,z1_re,z1_im,z2_re,z2_im,z3_re,z3_im,z4_re,z4_im,residual,deck_power");
}

TEST(ActionInvariants, Examples) {
  for (const auto& spec : {spec22(), examples::lorentzian_spec(2), examples::pq_spec(2, 3)}) {
    const auto r = verify_action_invariants(spec);
    EXPECT_TRUE(r.all_pass()) << spec.label() << r.to_json().dump();
  }
}

TEST(ActionInvariants, CorruptedWeight) {
  examples::ExampleSpec bad = spec22();
  auto w = bad.gamma.z_weights();
  w[2] = {3, 0};
  bad.gamma = exterior::DiagonalAction(bad.gamma.t_weight(), w);
  const auto r = verify_action_invariants(bad);
  EXPECT_FALSE(r.all_pass());
  EXPECT_FALSE(r.find("Gamma^* theta = s^4 theta")->pass);
  EXPECT_FALSE(r.find("r o Gamma = s^4 r")->pass);
  EXPECT_TRUE(r.find("L_X theta = -4 theta")->pass);
}

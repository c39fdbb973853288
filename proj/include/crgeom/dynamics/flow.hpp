#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "crgeom/examples/family.hpp"
#include "crgeom/pseudohermitian/report.hpp"

namespace crgeom::dynamics {

using cplx = std::complex<double>;

/// A point (w, z) of C^{n+1}; on M when Im w = phi(z), with t = Re w.
struct FlowState {
  double tau = 0;
  cplx w;
  std::vector<cplx> z;
  double residual = 0;  // |Im w - phi(z)|
  bool flagged = false;  // residual above kResidualTol
  int deck_power = 0;    // accumulated by normalize

  double t() const { return w.real(); }
};

inline constexpr double kResidualTol = 1e-9;

/// Deck parameters of Gamma_{alpha,beta} and the section window
/// [c e^alpha, c) on the modulus of the a-weighted coordinate.
struct QuotientSpec {
  double alpha = -1.0;
  double beta = -1.25;
  double window_c = 1.0;

  /// Errors: precondition unless 4 beta < alpha < 0 and c > 0.
  static QuotientSpec from(const examples::QuotientParams& q, double window_c = 1.0);
  void validate() const;
};

/// Numeric view of an example: closed-form flow phi_tau = Gamma_{0,-tau},
/// deck transformations and the section.
class FlowModel {
 public:
  explicit FlowModel(const examples::ExampleSpec& spec);

  int n() const { return spec_.n; }
  const examples::ExampleSpec& spec() const { return spec_; }
  /// Contraction rate per coordinate (t, z_1..z_n): minus the log-derivative
  /// of the flow factor, i.e. the s-exponent of the Gamma weight.
  const std::vector<int>& rates() const { return rates_; }
  /// 0-based z index used by the section (weight a^1 s^0), or -1.
  int section_index() const { return section_; }

  double residual(const FlowState& x) const;
  /// Point of M over (t, z): w = t + i phi(z).
  FlowState on_manifold(double t, std::vector<cplx> z) const;
  /// Closed form: every coordinate times exp(-rate tau); w scales like t.
  FlowState flow(const FlowState& x, double tau) const;
  /// RK4 on dx/dtau = X(x) with the symbolic essential field.
  FlowState flow_rk4(const FlowState& x, double tau, int steps) const;
  /// Gamma_{alpha,beta}^k.
  FlowState deck(const FlowState& x, const QuotientSpec& q, int k) const;
  /// Gamma^k x with the section modulus in [c e^alpha, c); k is unique and
  /// added to deck_power. Errors: precondition when the section coordinate
  /// is zero ("section undefined") or the example has no a-weighted
  /// coordinate.
  FlowState normalize(const FlowState& x, const QuotientSpec& q) const;

 private:
  FlowState finish(FlowState x) const;

  examples::ExampleSpec spec_;
  std::vector<int> rates_;
  std::vector<exterior::ScaleWeight> weights_;  // t, z_1..z_n
  int section_ = -1;
  algebra::Coeff phi_;
  std::vector<algebra::Coeff> field_;  // X components on t, z_j
  algebra::Coeff field_w_;             // X(t + i phi)
};

struct AttractorOptions {
  int seeds = 100;
  double tau_end = 10.0;
  double sample_dt = 0.1;
  std::uint64_t seed = 0;
  bool rk4_cross_check = false;
  int rk4_steps_per_unit = 200;
};

struct CoordinateFit {
  std::string name;
  double expected = 0;
  double rate_mean = 0, rate_min = 0, rate_max = 0;
  double r_squared_min = 1;
  bool within = false;  // 1% relative, or 0.01 absolute for expected 0
};

struct AttractorReport {
  examples::ExampleSpec spec;
  QuotientSpec quotient;
  AttractorOptions options;
  std::vector<CoordinateFit> fits;
  double residual_max = 0;
  double commutation_defect = 0;  // |normalize(flow x) - flow(normalize x)|
  double rk4_max_defect = -1;     // set when the cross-check ran
  double coordinate_volume_rate = 0;   // -(sum of fitted rates), complex coordinates once
  double lebesgue_volume_rate = 0;     // t once, each z_j twice
  algebra::GaussianRational contact_volume_rate;  // exact: L_X vol = c vol
  bool pass = false;

  nlohmann::json to_json() const;
};

/// Reproducible seeds on M (section modulus inside the window), closed-form
/// trajectories, log-linear fits over [tau_end/2, tau_end]. Errors:
/// numeric_breach if any seed leaves M beyond kResidualTol.
AttractorReport attractor_report(const examples::ExampleSpec& spec, const QuotientSpec& q, const AttractorOptions& opt);

/// Seeded on-M point with the section modulus in the window.
FlowState random_seed(const FlowModel& m, const QuotientSpec& q, std::uint64_t seed, int index);

/// Samples of normalize(flow(x, k dt)) for k = 0..tau_end/dt.
std::vector<FlowState> trajectory(const FlowModel& m, const QuotientSpec& q, const FlowState& x, double tau_end,
                                  double dt);

/// Columns: tau, t, z1_re, z1_im, ..., residual, deck_power.
void write_csv(std::ostream& os, const std::vector<FlowState>& traj);

/// Exact c with L_X (theta ^ (d theta)^n) = c theta ^ (d theta)^n.
algebra::GaussianRational contact_volume_rate(const examples::ExampleSpec& spec);

/// Exact checks: r o Gamma = s^k r, Gamma^* theta = s^k theta, X commutes
/// with Gamma^*, L_X theta = -k theta, [X, Z_a] in span{Z_b}.
ph::Report verify_action_invariants(const examples::ExampleSpec& spec);

}  // namespace crgeom::dynamics

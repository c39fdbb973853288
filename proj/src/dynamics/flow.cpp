#include "crgeom/dynamics/flow.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "crgeom/error.hpp"
#include "crgeom/exterior/vector_field.hpp"
#include "crgeom/pseudohermitian/structure.hpp"

namespace crgeom::dynamics {

using algebra::Coeff;
using algebra::GaussianRational;
using algebra::Var;
using exterior::Form;
using exterior::ScaleWeight;
using exterior::VectorField;

QuotientSpec QuotientSpec::from(const examples::QuotientParams& q, double window_c) {
  QuotientSpec s{q.alpha.get_d(), q.beta.get_d(), window_c};
  s.validate();
  return s;
}

void QuotientSpec::validate() const {
  if (!(4 * beta < alpha && alpha < 0)) throw Error(Errc::precondition, "quotient needs 4 beta < alpha < 0");
  if (!(window_c > 0)) throw Error(Errc::precondition, "section window constant must be positive");
}

FlowModel::FlowModel(const examples::ExampleSpec& spec) : spec_(spec) {
  const int n = spec.n;
  weights_.push_back(spec.gamma.t_weight());
  for (const auto& w : spec.gamma.z_weights()) weights_.push_back(w);
  for (const auto& w : weights_) rates_.push_back(w.s);
  for (int j = 0; j < n; ++j)
    if (spec.gamma.z_weights()[static_cast<std::size_t>(j)] == ScaleWeight{0, 1}) section_ = j;
  phi_ = spec.phi;
  for (int k = 0; k <= n; ++k) field_.push_back(spec.essential[k]);
  field_w_ = spec.essential.apply(Coeff::var(n, Var::t()) + phi_ * GaussianRational::i());
}

double FlowModel::residual(const FlowState& x) const {
  const auto p = algebra::NumericPoint::real(x.w.real(), x.z);
  return std::abs(x.w.imag() - phi_.evaluate(p).real());
}

FlowState FlowModel::finish(FlowState x) const {
  x.residual = residual(x);
  x.flagged = !(x.residual <= kResidualTol);
  return x;
}

FlowState FlowModel::on_manifold(double t, std::vector<cplx> z) const {
  if (static_cast<int>(z.size()) != n()) throw Error(Errc::dimension_mismatch, "point needs n complex coordinates");
  FlowState x;
  x.z = std::move(z);
  x.w = cplx(t, phi_.evaluate(algebra::NumericPoint::real(t, x.z)).real());
  return finish(x);
}

FlowState FlowModel::flow(const FlowState& x, double tau) const {
  FlowState y = x;
  y.tau = x.tau + tau;
  y.w *= std::exp(-rates_[0] * tau);
  for (int j = 0; j < n(); ++j) y.z[static_cast<std::size_t>(j)] *= std::exp(-rates_[static_cast<std::size_t>(j + 1)] * tau);
  return finish(y);
}

FlowState FlowModel::flow_rk4(const FlowState& x, double tau, int steps) const {
  if (steps < 1) throw Error(Errc::precondition, "RK4 needs at least one step");
  const double h = tau / steps;
  // y = (w, z_1..z_n); dw/dtau = X(t + i phi), dz_j/dtau = X^{z_j}.
  auto rhs = [&](const std::vector<cplx>& y) {
    std::vector<cplx> z(y.begin() + 1, y.end());
    const auto p = algebra::NumericPoint::real(y[0].real(), z);
    std::vector<cplx> dy(y.size());
    dy[0] = field_w_.evaluate(p);
    for (int j = 1; j <= n(); ++j) dy[static_cast<std::size_t>(j)] = field_[static_cast<std::size_t>(j)].evaluate(p);
    return dy;
  };
  std::vector<cplx> y{x.w};
  y.insert(y.end(), x.z.begin(), x.z.end());
  for (int s = 0; s < steps; ++s) {
    auto axpy = [&](const std::vector<cplx>& k, double c) {
      std::vector<cplx> out(y);
      for (std::size_t i = 0; i < y.size(); ++i) out[i] += c * k[i];
      return out;
    };
    const auto k1 = rhs(y);
    const auto k2 = rhs(axpy(k1, h / 2));
    const auto k3 = rhs(axpy(k2, h / 2));
    const auto k4 = rhs(axpy(k3, h));
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  FlowState out = x;
  out.tau = x.tau + tau;
  out.w = y[0];
  out.z.assign(y.begin() + 1, y.end());
  return finish(out);
}

FlowState FlowModel::deck(const FlowState& x, const QuotientSpec& q, int k) const {
  auto factor = [&](ScaleWeight w) { return std::exp(k * (w.s * q.beta + w.a * q.alpha)); };
  FlowState y = x;
  y.w *= factor(weights_[0]);
  for (int j = 0; j < n(); ++j) y.z[static_cast<std::size_t>(j)] *= factor(weights_[static_cast<std::size_t>(j + 1)]);
  y.deck_power = x.deck_power + k;
  return finish(y);
}

FlowState FlowModel::normalize(const FlowState& x, const QuotientSpec& q) const {
  q.validate();
  if (section_ < 0) throw Error(Errc::precondition, "section undefined: no coordinate carries the deck weight a");
  const double m = std::abs(x.z[static_cast<std::size_t>(section_)]);
  if (m == 0)
    throw Error(Errc::precondition, "section undefined; state near fixed-set fiber (z" + std::to_string(section_ + 1) +
                                        " = 0)");
  const double lo = q.window_c * std::exp(q.alpha), hi = q.window_c;
  // Each deck step multiplies the section modulus by e^alpha < 1.
  int k = static_cast<int>(std::floor(1.0 - std::log(m / q.window_c) / q.alpha));
  for (int guard = 0; guard < 4; ++guard) {
    const double mk = m * std::exp(k * q.alpha);
    if (mk >= hi) ++k;
    else if (mk < lo) --k;
    else break;
  }
  return deck(x, q, k);
}

FlowState random_seed(const FlowModel& m, const QuotientSpec& q, std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 gen(seq);
  std::uniform_real_distribution<double> box(-1.0, 1.0), angle(0.0, 2 * M_PI);
  std::uniform_real_distribution<double> logmod(std::log(q.window_c) + q.alpha, std::log(q.window_c));
  const double t = box(gen);
  std::vector<cplx> z;
  for (int j = 0; j < m.n(); ++j) {
    if (j == m.section_index()) {
      z.push_back(std::polar(std::exp(logmod(gen)), angle(gen)));
    } else {
      const double re = box(gen);
      z.push_back(cplx(re, box(gen)));
    }
  }
  return m.on_manifold(t, z);
}

std::vector<FlowState> trajectory(const FlowModel& m, const QuotientSpec& q, const FlowState& x, double tau_end,
                                  double dt) {
  if (!(dt > 0) || tau_end < 0) throw Error(Errc::precondition, "trajectory needs dt > 0 and tau_end >= 0");
  const int steps = static_cast<int>(std::llround(tau_end / dt));
  std::vector<FlowState> out;
  for (int k = 0; k <= steps; ++k) {
    FlowState y = m.flow(x, k * dt);
    out.push_back(m.section_index() >= 0 ? m.normalize(y, q) : y);
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<FlowState>& traj) {
  const std::size_t n = traj.empty() ? 0 : traj.front().z.size();
  os << "tau,t";
  for (std::size_t j = 1; j <= n; ++j) os << ",z" << j << "_re,z" << j << "_im";
  os << ",residual,deck_power\n";
  os.precision(17);
  for (const auto& x : traj) {
    os << x.tau << ',' << x.t();
    for (const auto& z : x.z) os << ',' << z.real() << ',' << z.imag();
    os << ',' << x.residual << ',' << x.deck_power << '\n';
  }
}

namespace {

struct LineFit {
  double slope = 0;
  double r_squared = 1;
};

LineFit fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n, my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - my - f.slope * (x[i] - mx);
    ss_res += e * e;
  }
  // A constant series is fitted exactly.
  f.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return f;
}

double distance(const FlowState& a, const FlowState& b) {
  double d = std::abs(a.w - b.w);
  for (std::size_t j = 0; j < a.z.size(); ++j) d = std::max(d, std::abs(a.z[j] - b.z[j]));
  return d;
}

}  // namespace

AttractorReport attractor_report(const examples::ExampleSpec& spec, const QuotientSpec& q, const AttractorOptions& opt) {
  q.validate();
  if (opt.seeds < 1 || !(opt.tau_end > 0) || !(opt.sample_dt > 0))
    throw Error(Errc::precondition, "attractor run needs seeds >= 1, tau_end > 0, sample_dt > 0");
  const FlowModel m(spec);
  AttractorReport rep;
  rep.spec = spec;
  rep.quotient = q;
  rep.options = opt;
  const int coords = m.n() + 1;
  std::vector<std::vector<double>> rates(static_cast<std::size_t>(coords));
  std::vector<double> r2_min(static_cast<std::size_t>(coords), 1.0);
  const int steps = static_cast<int>(std::llround(opt.tau_end / opt.sample_dt));

  for (int s = 0; s < opt.seeds; ++s) {
    const FlowState x0 = random_seed(m, q, opt.seed, s);
    std::vector<double> taus;
    std::vector<std::vector<double>> logs(static_cast<std::size_t>(coords));
    for (int k = 0; k <= steps; ++k) {
      const double tau = k * opt.sample_dt;
      const FlowState x = m.flow(x0, tau);
      rep.residual_max = std::max(rep.residual_max, x.residual);
      if (x.flagged)
        throw Error(Errc::numeric_breach, "seed " + std::to_string(s) + " left M: residual " +
                                              std::to_string(x.residual) + " at tau = " + std::to_string(tau));
      if (tau < opt.tau_end / 2 - 1e-12) continue;
      taus.push_back(tau);
      logs[0].push_back(std::log(std::abs(x.t())));
      for (int j = 0; j < m.n(); ++j) logs[static_cast<std::size_t>(j + 1)].push_back(std::log(std::abs(x.z[static_cast<std::size_t>(j)])));
    }
    for (int c = 0; c < coords; ++c) {
      const LineFit f = fit(taus, logs[static_cast<std::size_t>(c)]);
      rates[static_cast<std::size_t>(c)].push_back(-f.slope);
      r2_min[static_cast<std::size_t>(c)] = std::min(r2_min[static_cast<std::size_t>(c)], f.r_squared);
    }
    if (m.section_index() >= 0) {
      const FlowState a = m.normalize(m.flow(x0, opt.tau_end), q);
      const FlowState b = m.flow(m.normalize(x0, q), opt.tau_end);
      rep.commutation_defect = std::max(rep.commutation_defect, distance(a, b));
    }
    if (opt.rk4_cross_check) {
      const int n_steps = std::max(1, static_cast<int>(std::ceil(opt.tau_end * opt.rk4_steps_per_unit)));
      const FlowState a = m.flow_rk4(x0, opt.tau_end, n_steps);
      rep.rk4_max_defect = std::max(rep.rk4_max_defect, distance(a, m.flow(x0, opt.tau_end)));
    }
  }

  bool ok = rep.residual_max <= kResidualTol && rep.commutation_defect < 1e-12;
  double lebesgue = 0, coordinate = 0;
  for (int c = 0; c < coords; ++c) {
    CoordinateFit f;
    f.name = c == 0 ? "t" : "z" + std::to_string(c);
    f.expected = m.rates()[static_cast<std::size_t>(c)];
    const auto& r = rates[static_cast<std::size_t>(c)];
    f.rate_min = *std::min_element(r.begin(), r.end());
    f.rate_max = *std::max_element(r.begin(), r.end());
    for (double v : r) f.rate_mean += v;
    f.rate_mean /= static_cast<double>(r.size());
    f.r_squared_min = r2_min[static_cast<std::size_t>(c)];
    const double tol = f.expected == 0 ? 0.01 : 0.01 * std::abs(f.expected);
    f.within = std::abs(f.rate_min - f.expected) <= tol && std::abs(f.rate_max - f.expected) <= tol;
    ok = ok && f.within;
    coordinate -= f.rate_mean;
    lebesgue -= (c == 0 ? 1.0 : 2.0) * f.rate_mean;
    rep.fits.push_back(f);
  }
  rep.coordinate_volume_rate = coordinate;
  rep.lebesgue_volume_rate = lebesgue;
  rep.contact_volume_rate = contact_volume_rate(spec);
  ok = ok && std::abs(lebesgue - rep.contact_volume_rate.re().get_d()) < 1e-6;
  if (opt.rk4_cross_check) ok = ok && rep.rk4_max_defect < 1e-9;
  rep.pass = ok;
  return rep;
}

nlohmann::json AttractorReport::to_json() const {
  nlohmann::json j;
  nlohmann::json rates = nlohmann::json::object(), r2 = nlohmann::json::object(), expected = nlohmann::json::object();
  for (const auto& f : fits) {
    rates[f.name] = f.rate_mean;
    r2[f.name] = f.r_squared_min;
    expected[f.name] = f.expected;
  }
  j["rates"] = rates;
  j["expected_rates"] = expected;
  j["r_squared"] = r2;
  j["residual_max"] = residual_max;
  j["seeds"] = options.seeds;
  j["params"] = {{"example", spec.label()},
                 {"alpha", quotient.alpha},
                 {"beta", quotient.beta},
                 {"window_c", quotient.window_c},
                 {"tau_end", options.tau_end},
                 {"sample_dt", options.sample_dt},
                 {"seed", options.seed}};
  j["commutation_defect"] = commutation_defect;
  if (options.rk4_cross_check) j["rk4_max_defect"] = rk4_max_defect;
  j["volume_rates"] = {{"coordinate_proxy", coordinate_volume_rate},
                       {"lebesgue", lebesgue_volume_rate},
                       {"contact_exact", contact_volume_rate.to_string()}};
  j["pass"] = pass;
  return j;
}

GaussianRational contact_volume_rate(const examples::ExampleSpec& spec) {
  const Form theta = ph::contact_from_defining(spec.phi);
  const Form vol = exterior::wedge(theta, exterior::wedge_power(exterior::d(theta), spec.n));
  const Form lx = exterior::lie_derivative(spec.essential, vol);
  for (const auto& [mask, c] : vol.components()) {
    if (!c.is_unit() || c.has_exp_grade()) continue;
    const Coeff ratio = lx.component(mask).divided_by_unit(c);
    if (!ratio.is_constant() || !(lx == ratio * vol))
      throw Error(Errc::internal, "L_X vol is not a constant multiple of vol");
    return ratio.constant_value();
  }
  throw Error(Errc::internal, "volume form has no constant component");
}

ph::Report verify_action_invariants(const examples::ExampleSpec& spec) {
  const int n = spec.n;
  const int k = spec.homothety_weight();
  const Coeff sk = Coeff::monomial(n, algebra::Monomial::of(Var::s(), k));
  const Form theta = ph::contact_from_defining(spec.phi);
  ph::Report rep;
  const std::string sks = "s^" + std::to_string(k);

  const Coeff r_defect = exterior::pullback(spec.gamma, spec.phi) - sk * spec.phi;
  const bool t_ok = spec.gamma.t_weight() == ScaleWeight{k, 0};
  rep.add("r o Gamma = " + sks + " r", r_defect.is_zero() && t_ok,
          {{"phi", r_defect.to_string()}, {"t_weight_matches", t_ok}});

  rep.add("Gamma^* theta = " + sks + " theta", exterior::pullback(spec.gamma, theta) - sk * theta);

  bool commute = true;
  nlohmann::json comm = nlohmann::json::array();
  for (int c = 0; c < 2 * n + 1; ++c) {
    const Coeff x = Coeff::var(n, exterior::coordinate(n, c));
    const Coeff lhs = spec.essential.apply(exterior::pullback(spec.gamma, x));
    const Coeff rhs = exterior::pullback(spec.gamma, spec.essential.apply(x));
    const Coeff diff = lhs - rhs;
    commute = commute && diff.is_zero();
    comm.push_back(diff.to_string());
  }
  rep.add("phi_tau commutes with Gamma: X(Gamma^* x) = Gamma^*(X x)", commute, comm);

  rep.add("L_X theta = -" + std::to_string(k) + " theta",
          exterior::lie_derivative(spec.essential, theta) + GaussianRational(k) * theta);

  const ph::PHStructure s = ph::complete_structure(theta, ph::coordinate_coframe(n));
  bool span = true;
  nlohmann::json coeffs = nlohmann::json::array();
  for (int a = 0; a < n; ++a) {
    const VectorField br = exterior::lie_bracket(spec.essential, s.frame[static_cast<std::size_t>(a)]);
    span = span && exterior::evaluate(s.theta, br).is_zero();
    nlohmann::json row = nlohmann::json::array();
    for (int b = 0; b < n; ++b) {
      span = span && exterior::evaluate(s.coframe[static_cast<std::size_t>(b)].conj(), br).is_zero();
      row.push_back(exterior::evaluate(s.coframe[static_cast<std::size_t>(b)], br).to_string());
    }
    coeffs.push_back(row);
  }
  rep.add("[X, Z_a] in span{Z_b}", span, coeffs);
  return rep;
}

}  // namespace crgeom::dynamics

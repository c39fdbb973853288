#include "crgeom/geodesics/schwarzian.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "crgeom/error.hpp"

namespace crgeom::geodesics {

RationalMap schwarzian_exact(const RationalMap& p) {
  if (p.is_constant()) throw Error(Errc::precondition, "Schwarzian of a constant map");
  // p = N/D, p' = W/D^2 with W = N'D - ND'. Then
  //   {p, z} = W''/W - (3/2)(W'/W)^2 - 2 D''/D + 2 W'D'/(W D),
  // assembled over W^2 D and reduced once.
  const Poly& n = p.num();
  const Poly& d = p.den();
  const Poly w = n.derivative() * d - n * d.derivative();
  const Poly w1 = w.derivative(), w2 = w1.derivative();
  const Poly d1 = d.derivative(), d2 = d1.derivative();
  const Poly two = Poly::constant(2);
  const Poly num = two * w2 * w * d - Poly::constant(3) * w1 * w1 * d - Poly::constant(4) * d2 * w * w +
                   Poly::constant(4) * w1 * d1 * w;
  return RationalMap(num, two * w * w * d);
}

RationalMap chain_rule_residual(const RationalMap& p, const RationalMap& w) {
  const RationalMap dw = w.derivative();
  return schwarzian_exact(p.compose(w)) - schwarzian_exact(w) - schwarzian_exact(p).compose(w) * dw * dw;
}

int segment_steps(cplx delta, double step, int multiple) {
  int steps = std::max(1, static_cast<int>(std::ceil(std::abs(delta) / step - 1e-9)));
  if (steps % multiple) steps += multiple - steps % multiple;
  return steps;
}

void integrate_rk4(const HolomorphicRhs& f, const ComplexPath& path, double step, std::vector<cplx>& y,
                   const std::function<void(cplx, std::span<const cplx>)>& observer, int multiple) {
  if (!(step > 0)) throw Error(Errc::precondition, "integration step must be positive");
  if (path.vertices.empty()) throw Error(Errc::precondition, "empty integration path");
  const std::size_t m = y.size();
  std::vector<cplx> k1(m), k2(m), k3(m), k4(m), tmp(m);
  cplx z = path.vertices.front();
  if (observer) observer(z, y);
  for (std::size_t seg = 1; seg < path.vertices.size(); ++seg) {
    const cplx delta = path.vertices[seg] - path.vertices[seg - 1];
    const int steps = segment_steps(delta, step, multiple);
    const cplx h = delta / static_cast<double>(steps);
    for (int k = 0; k < steps; ++k) {
      f(z, y, k1);
      for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
      f(z + 0.5 * h, tmp, k2);
      for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
      f(z + 0.5 * h, tmp, k3);
      for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + h * k3[i];
      f(z + h, tmp, k4);
      for (std::size_t i = 0; i < m; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      // Land exactly on vertices so segment ends do not drift.
      z = k + 1 == steps ? path.vertices[seg] : z + h;
      if (observer) observer(z, y);
    }
  }
}

SchwarzianODE SchwarzianODE::from_map(const RationalMap& q, cplx p0, cplx dp0, cplx ddp0) {
  return {[q](cplx z) { return q.evaluate(z); }, p0, dp0, ddp0};
}

namespace {

std::string location(cplx z) {
  std::ostringstream os;
  os.precision(12);
  os << "z = " << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

std::vector<SchwarzianSample> solve_schwarzian_ode(const SchwarzianODE& ode, const ComplexPath& path, double step,
                                                   int sample_every) {
  if (sample_every < 1) throw Error(Errc::precondition, "sample_every must be >= 1");
  if (ode.dp0 == cplx(0.0)) throw Error(Errc::precondition, "initial p' must be nonzero");
  // y = (u1, u1', u2, u2'); p = u1/u2 with the Wronskian W = u1' u2 - u1 u2'
  // constant (= p'(z0)).
  const cplx du2 = -ode.ddp0 / (2.0 * ode.dp0);
  std::vector<cplx> y{ode.p0, ode.dp0 + ode.p0 * du2, 1.0, du2};
  const double scale = 1.0 + std::abs(ode.p0);

  auto rhs = [&](cplx z, std::span<const cplx> s, std::span<cplx> ds) {
    const cplx half_q = 0.5 * ode.q(z);
    if (!std::isfinite(half_q.real()) || !std::isfinite(half_q.imag()))
      throw Error(Errc::precondition, "potential is not finite at " + location(z));
    if (step * std::sqrt(std::abs(half_q)) > 1.0)
      throw Error(Errc::step_too_large, "step too large: |h| sqrt(|Q|/2) > 1 at " + location(z));
    ds[0] = s[1];
    ds[1] = -half_q * s[0];
    ds[2] = s[3];
    ds[3] = -half_q * s[2];
  };

  std::vector<SchwarzianSample> out;
  int counter = 0;
  integrate_rk4(
      rhs, path, step, y,
      [&](cplx z, std::span<const cplx> s) {
        if (std::abs(s[2]) < 1e-12 * (scale + std::abs(s[0])) || std::abs(s[2]) < 0.5 * step * std::abs(s[3]))
          throw Error(Errc::pole_crossed, "pole crossed: u2 vanishes near " + location(z));
        const cplx w = s[1] * s[2] - s[0] * s[3];
        if (counter++ % sample_every == 0) out.push_back({z, s[0] / s[2], w / (s[2] * s[2])});
      },
      sample_every);
  return out;
}

cplx central_d1(std::span<const cplx, 9> f, cplx h) {
  static constexpr double c[9] = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0, 4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  cplx s = 0.0;
  for (int k = 0; k < 9; ++k) s += c[k] * f[static_cast<std::size_t>(k)];
  return s / h;
}

cplx central_d2(std::span<const cplx, 9> f, cplx h) {
  static constexpr double c[9] = {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72,
                                  8.0 / 5,    -1.0 / 5,  8.0 / 315, -1.0 / 560};
  cplx s = 0.0;
  for (int k = 0; k < 9; ++k) s += c[k] * f[static_cast<std::size_t>(k)];
  return s / (h * h);
}

cplx central_d3(std::span<const cplx, 9> f, cplx h) {
  static constexpr double c[9] = {-7.0 / 240, 3.0 / 10,   -169.0 / 120, 61.0 / 30, 0,
                                  -61.0 / 30, 169.0 / 120, -3.0 / 10,   7.0 / 240};
  cplx s = 0.0;
  for (int k = 0; k < 9; ++k) s += c[k] * f[static_cast<std::size_t>(k)];
  return s / (h * h * h);
}

cplx numeric_schwarzian(const std::function<cplx(cplx)>& p, cplx z, cplx h) {
  std::array<cplx, 9> f;
  for (int k = -4; k <= 4; ++k) f[static_cast<std::size_t>(k + 4)] = p(z + static_cast<double>(k) * h);
  const cplx d1 = central_d1(f, h);
  const cplx d2 = central_d2(f, h);
  const cplx d3 = central_d3(f, h);
  const cplx r = d2 / d1;
  return d3 / d1 - 1.5 * r * r;
}

cplx numeric_schwarzian_at(std::span<const SchwarzianSample> samples, std::size_t i) {
  if (i < 4 || i + 4 >= samples.size()) throw Error(Errc::precondition, "stencil leaves the sampled range");
  const cplx h = samples[i + 1].z - samples[i].z;
  for (std::size_t k = i - 4; k < i + 4; ++k)
    if (std::abs(samples[k + 1].z - samples[k].z - h) > 1e-9 * std::abs(h))
      throw Error(Errc::precondition, "stencil samples are not equally spaced");
  std::array<cplx, 9> f;
  for (std::size_t k = 0; k < 9; ++k) f[k] = samples[i - 4 + k].dp;
  const cplx d1 = samples[i].dp;
  const cplx d2 = central_d1(f, h);
  const cplx d3 = central_d2(f, h);
  const cplx r = d2 / d1;
  return d3 / d1 - 1.5 * r * r;
}

}  // namespace crgeom::geodesics

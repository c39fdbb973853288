#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "crgeom/geodesics/rational_map.hpp"

namespace crgeom::geodesics {

using cplx = std::complex<double>;

/// {p, z} = p'''/p' - (3/2)(p''/p')^2. Errors: precondition for constant p.
RationalMap schwarzian_exact(const RationalMap& p);

/// Chain rule in composition form, q = p o w:
///   {q, z} - {w, z} - ({p, w} o w) (w')^2,
/// which is the identity {p, w} = ({p, z} - {w, z}) (dz/dw)^2 read with p a
/// function of w. Identically zero whenever both sides are defined.
RationalMap chain_rule_residual(const RationalMap& p, const RationalMap& w);

/// Polyline in the complex plane, traversed vertex to vertex.
struct ComplexPath {
  std::vector<cplx> vertices;
  static ComplexPath segment(cplx from, cplx to) { return {{from, to}}; }
};

/// Holomorphic right-hand side y' = f(z, y) for a complex state vector.
using HolomorphicRhs = std::function<void(cplx z, std::span<const cplx> y, std::span<cplx> dy)>;

/// Number of equal steps for one segment: ceil(length / step) rounded up to
/// a multiple of `multiple`.
int segment_steps(cplx delta, double step, int multiple = 1);

/// Classical RK4 along the path; each segment takes segment_steps equal
/// complex steps. observer(z, y) runs at the start and after every step.
/// Errors: precondition for step <= 0 or an empty path.
void integrate_rk4(const HolomorphicRhs& f, const ComplexPath& path, double step, std::vector<cplx>& y,
                   const std::function<void(cplx, std::span<const cplx>)>& observer, int multiple = 1);

/// {p, z} = Q with p(z0) = p0, p'(z0) = dp0, p''(z0) = ddp0 at the first vertex.
struct SchwarzianODE {
  std::function<cplx(cplx)> q;
  cplx p0 = 0.0, dp0 = 1.0, ddp0 = 0.0;

  static SchwarzianODE from_map(const RationalMap& q, cplx p0, cplx dp0, cplx ddp0);
};

struct SchwarzianSample {
  cplx z;
  cplx p;
  cplx dp;  // p' = W / u2^2 from the linear-system state
};

/// Integrates u'' + (Q/2) u = 0 for two solutions with RK4 and returns
/// p = u1/u2 every sample_every steps; step counts per segment are rounded
/// up to multiples of sample_every so samples are uniform on each segment
/// and include every vertex. The initial data fix
/// the Mobius representative. Errors: pole_crossed (u2 ~ 0, message carries
/// the location), step_too_large (|h| sqrt(|Q|/2) > 1), precondition.
std::vector<SchwarzianSample> solve_schwarzian_ode(const SchwarzianODE& ode, const ComplexPath& path, double step,
                                                   int sample_every = 1);

/// Order-6 central differences on 9 equally spaced samples f(z + k h),
/// k = -4..4. Each returns the requested derivative at the centre.
cplx central_d1(std::span<const cplx, 9> f, cplx h);
cplx central_d2(std::span<const cplx, 9> f, cplx h);
cplx central_d3(std::span<const cplx, 9> f, cplx h);

/// {p, z} from values of p on a 9-point stencil of spacing h (default 1e-2
/// keeps the third-difference rounding near 1e-10 on unit-scale data).
cplx numeric_schwarzian(const std::function<cplx(cplx)>& p, cplx z, cplx h = 1e-2);

/// {p, z} at sample i of a uniformly spaced run, from the p' samples
/// (two central differences of p' instead of three of p). Needs 4 samples
/// on each side of i.
cplx numeric_schwarzian_at(std::span<const SchwarzianSample> samples, std::size_t i);

}  // namespace crgeom::geodesics

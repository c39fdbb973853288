#include "crgeom/geodesics/null_curve.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "crgeom/error.hpp"

namespace crgeom::geodesics {

using algebra::Var;

NullCurve NullCurve::from_map(int n, const Coeff& t, const std::vector<Coeff>& z) {
  if (static_cast<int>(z.size()) != n) throw Error(Errc::dimension_mismatch, "curve needs one image per z_j");
  if (t.arity() != 1) throw Error(Errc::dimension_mismatch, "curve images must have arity 1");
  if (!(t.conj() == t)) throw Error(Errc::non_real, "t image of a curve must be real");
  NullCurve g;
  g.n = n;
  g.coords.push_back(t);
  for (const auto& zj : z) {
    if (zj.arity() != 1) throw Error(Errc::dimension_mismatch, "curve images must have arity 1");
    g.coords.push_back(zj);
  }
  for (const auto& zj : z) g.coords.push_back(zj.conj());
  return g;
}

NullCurve NullCurve::leaf(int n, int index, const GaussianRational& t0, const std::vector<GaussianRational>& z0) {
  if (index < 1 || index > n) throw Error(Errc::precondition, "leaf direction out of range");
  if (!z0.empty() && static_cast<int>(z0.size()) != n) throw Error(Errc::dimension_mismatch, "base point size");
  if (!t0.is_real()) throw Error(Errc::non_real, "t0 must be real");
  std::vector<Coeff> z;
  for (int j = 1; j <= n; ++j) {
    Coeff c(1, z0.empty() ? GaussianRational() : z0[static_cast<std::size_t>(j - 1)]);
    if (j == index) c += zeta();
    z.push_back(c);
  }
  return from_map(n, Coeff(1, t0), z);
}

Coeff NullCurve::along(const Coeff& f) const { return algebra::substitute(f, coords); }

algebra::ExpContext NullCurve::along(const algebra::ExpContext& ctx) const {
  if (!ctx.active()) return {};
  return algebra::ExpContext::for_exponent(along(ctx.upsilon()));
}

Coeff NullCurve::d_zeta(const Coeff& f, const algebra::ExpContext& curve_ctx) const {
  return algebra::partial(f, Var::z(1), curve_ctx);
}

Coeff NullCurve::d_zetabar(const Coeff& f, const algebra::ExpContext& curve_ctx) const {
  return algebra::partial(f, Var::zbar(1), curve_ctx);
}

std::vector<Coeff> NullCurve::tangent() const {
  std::vector<Coeff> out;
  for (const auto& c : coords) out.push_back(d_zeta(c));
  return out;
}

std::vector<Coeff> NullCurve::antitangent() const {
  std::vector<Coeff> out;
  for (const auto& c : coords) out.push_back(d_zetabar(c));
  return out;
}

namespace {

Coeff pair_along(const NullCurve& g, const Form& w, const std::vector<Coeff>& vec) {
  if (w.degree() != 1) throw Error(Errc::dimension_mismatch, "expected a 1-form");
  Coeff out(1);
  for (const auto& [mask, coeff] : w.components()) {
    int k = 0;
    while (!(mask & (1u << k))) ++k;
    out += g.along(coeff) * vec[static_cast<std::size_t>(k)];
  }
  return out;
}

}  // namespace

Coeff NullCurve::on_tangent(const Form& w) const { return pair_along(*this, w, tangent()); }
Coeff NullCurve::on_antitangent(const Form& w) const { return pair_along(*this, w, antitangent()); }

CurveFrame curve_frame(const PHStructure& s, const NullCurve& g) {
  if (g.n != s.n) throw Error(Errc::dimension_mismatch, "curve and structure dimensions differ");
  CurveFrame f;
  f.theta_part = g.on_tangent(s.theta);
  for (int a = 0; a < s.n; ++a) {
    f.v.push_back(g.on_tangent(s.coframe[static_cast<std::size_t>(a)]));
    f.bar_part.push_back(g.on_tangent(s.coframe[static_cast<std::size_t>(a)].conj()));
  }
  f.null_defect = Coeff(1);
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b)
      if (!s.levi(a, b).is_zero())
        f.null_defect += g.along(s.levi(a, b)) * f.v[static_cast<std::size_t>(a)] *
                         f.v[static_cast<std::size_t>(b)].conj();
  return f;
}

void require_null(const PHStructure& s, const NullCurve& g) {
  const CurveFrame f = curve_frame(s, g);
  bool zero = f.theta_part.is_zero();
  for (int a = 0; a < s.n; ++a) zero = zero && f.v[static_cast<std::size_t>(a)].is_zero() &&
                                       f.bar_part[static_cast<std::size_t>(a)].is_zero();
  if (zero) throw Error(Errc::precondition, "zero tangent: gamma' vanishes identically");
  if (!f.theta_part.is_zero()) throw Error(Errc::precondition, "type (1,0) fails: theta(gamma') = " + f.theta_part.to_string());
  for (int a = 0; a < s.n; ++a)
    if (!f.bar_part[static_cast<std::size_t>(a)].is_zero())
      throw Error(Errc::precondition, "type (1,0) fails: conj theta^" + std::to_string(a + 1) +
                                          "(gamma') = " + f.bar_part[static_cast<std::size_t>(a)].to_string());
  if (!f.null_defect.is_zero())
    throw Error(Errc::precondition, "null condition fails: h(gamma', conj gamma') = " + f.null_defect.to_string());
}

namespace {

/// u with w = u v, or nullopt; u is extracted from a unit component of v.
std::optional<Coeff> proportionality(const std::vector<Coeff>& w, const std::vector<Coeff>& v) {
  const int arity = v.front().arity();
  std::optional<Coeff> u;
  bool w_zero = true;
  for (const auto& x : w) w_zero = w_zero && x.is_zero();
  if (w_zero) u = Coeff(arity);
  for (std::size_t b = 0; b < v.size() && !u; ++b)
    if (v[b].is_unit()) u = w[b].divided_by_unit(v[b]);
  if (!u) return std::nullopt;
  for (std::size_t b = 0; b < v.size(); ++b)
    if (!(w[b] - *u * v[b]).is_zero()) return std::nullopt;
  return u;
}

}  // namespace

Coeff geodesic_coefficient(const PHStructure& s, const Connection& c, const NullCurve& g) {
  require_null(s, g);
  const CurveFrame f = curve_frame(s, g);
  const auto ctx = g.along(s.ctx);
  std::vector<Coeff> along_z, along_zb;
  for (int b = 0; b < s.n; ++b) {
    Coeff wz = g.d_zeta(f.v[static_cast<std::size_t>(b)], ctx);
    Coeff wzb = g.d_zetabar(f.v[static_cast<std::size_t>(b)], ctx);
    for (int a = 0; a < s.n; ++a) {
      const Form& om = c.omega[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (om.is_zero()) continue;
      wz += f.v[static_cast<std::size_t>(a)] * g.on_tangent(om);
      wzb += f.v[static_cast<std::size_t>(a)] * g.on_antitangent(om);
    }
    along_z.push_back(wz);
    along_zb.push_back(wzb);
  }
  for (std::size_t b = 0; b < along_zb.size(); ++b)
    if (!along_zb[b].is_zero())
      throw Error(Errc::precondition, "not a geodesic: nabla_{conj gamma'} gamma' has component " +
                                          along_zb[b].to_string());
  auto u = proportionality(along_z, f.v);
  if (!u) throw Error(Errc::precondition, "not a geodesic: nabla_{gamma'} gamma' is not proportional to gamma'");
  return *u;
}

Coeff projective_parameter_rhs(const PHStructure& s, const Connection& c, const NullCurve& g) {
  require_null(s, g);
  const CurveFrame f = curve_frame(s, g);
  Coeff q(1);
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b) {
      const Coeff& A = c.torsion[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (!A.is_zero()) q += f.v[static_cast<std::size_t>(a)] * f.v[static_cast<std::size_t>(b)] * g.along(A);
    }
  return q * GaussianRational(0, 2);
}

LeafGeodesicReport verify_leaf_geodesic(const PHStructure& s, const Connection& c, const VectorField& z) {
  LeafGeodesicReport out;
  const VectorField zb = z.conj();
  std::vector<Coeff> v;
  Coeff type_defect = exterior::evaluate(s.theta, z);
  bool type_ok = type_defect.is_zero();
  nlohmann::json type_res = nlohmann::json::object();
  type_res["theta(Z)"] = type_defect.to_string();
  for (int a = 0; a < s.n; ++a) {
    v.push_back(exterior::evaluate(s.coframe[static_cast<std::size_t>(a)], z));
    const Coeff bar = exterior::evaluate(s.coframe[static_cast<std::size_t>(a)].conj(), z);
    type_ok = type_ok && bar.is_zero();
    type_res["conj theta^" + std::to_string(a + 1) + "(Z)"] = bar.to_string();
  }
  out.report.add("Z is type (1,0)", type_ok, type_res);

  Coeff null_defect(s.n);
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b)
      null_defect += s.levi(a, b) * v[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)].conj();
  out.report.add("h(Z, conj Z) = 0", null_defect);

  const VectorField br = exterior::lie_bracket(z, zb, s.ctx);
  out.report.add("[Z, conj Z] = 0", br.is_zero(), br.is_zero() ? nlohmann::json(0) : nlohmann::json(br.to_string()));

  std::vector<Coeff> wz, wzb;
  for (int b = 0; b < s.n; ++b) {
    Coeff x = z.apply(v[static_cast<std::size_t>(b)], s.ctx);
    Coeff y = zb.apply(v[static_cast<std::size_t>(b)], s.ctx);
    for (int a = 0; a < s.n; ++a) {
      if (v[static_cast<std::size_t>(a)].is_zero()) continue;
      x += v[static_cast<std::size_t>(a)] * c.omega_on(a, b, z);
      y += v[static_cast<std::size_t>(a)] * c.omega_on(a, b, zb);
    }
    wz.push_back(x);
    wzb.push_back(y);
  }
  out.u = proportionality(wz, v);
  nlohmann::json nz = nlohmann::json::array();
  for (const auto& x : wz) nz.push_back(x.to_string());
  if (out.u) out.report.add("nabla_Z Z = u Z", true, {{"u", out.u->to_string()}});
  else out.report.add("nabla_Z Z = u Z", false, {{"nabla_Z Z", nz}});

  bool bar_ok = true;
  nlohmann::json nzb = nlohmann::json::array();
  for (const auto& y : wzb) {
    bar_ok = bar_ok && y.is_zero();
    nzb.push_back(y.to_string());
  }
  out.report.add("nabla_{conj Z} Z = 0", bar_ok, bar_ok ? nlohmann::json(0) : nzb);
  return out;
}

namespace {

/// Numeric tables for the geodesic flow; every entry is an exact coefficient
/// evaluated at the current point.
struct FlowTables {
  int n = 0;
  std::vector<std::vector<Coeff>> frame;      // [g][k], k over t, z_j
  std::vector<std::vector<Coeff>> frame_bar;  // [g][k]
  std::vector<Coeff> omz, omzb;               // [(a*n+b)*n+g]
  std::vector<Coeff> levi;                    // [a*n+b]
  std::vector<Coeff> zw;                      // Z_g w
  Coeff upsilon;
  bool graded = false;
};

struct State {
  cplx t;
  std::vector<cplx> z, v;
  cplx w;
};

class GeodesicFlow {
 public:
  GeodesicFlow(const PHStructure& s, const Connection& c, const Coeff& phi) {
    tab_.n = s.n;
    const int n = s.n;
    const Coeff w = Coeff::var(n, Var::t()) + phi * GaussianRational(0, 1);
    for (int g = 0; g < n; ++g) {
      const VectorField& Z = s.frame[static_cast<std::size_t>(g)];
      const VectorField Zb = Z.conj();
      std::vector<Coeff> fz, fzb;
      for (int k = 0; k <= n; ++k) {
        fz.push_back(Z[k]);
        fzb.push_back(Zb[k]);
      }
      tab_.frame.push_back(fz);
      tab_.frame_bar.push_back(fzb);
      tab_.zw.push_back(Z.apply(w, s.ctx));
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        tab_.levi.push_back(s.levi(a, b));
        for (int g = 0; g < n; ++g) {
          tab_.omz.push_back(c.omega_on(a, b, s.frame[static_cast<std::size_t>(g)]));
          tab_.omzb.push_back(c.omega_on(a, b, s.frame[static_cast<std::size_t>(g)].conj()));
        }
      }
    tab_.graded = s.ctx.active();
    if (tab_.graded) tab_.upsilon = s.ctx.upsilon();
    w_ = w;
  }

  algebra::NumericPoint point(const State& st) const {
    algebra::NumericPoint p = algebra::NumericPoint::real(st.t.real(), st.z);
    if (tab_.graded) p.e = std::exp(tab_.upsilon.evaluate(p));
    return p;
  }

  /// Derivative of the state along the parameter direction delta (a complex
  /// number): d/ds = delta d_zeta + conj(delta) d_zetabar.
  void derivative(const State& st, cplx delta, State& out) const {
    const int n = tab_.n;
    const algebra::NumericPoint p = point(st);
    std::vector<cplx> vb(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) vb[static_cast<std::size_t>(a)] = std::conj(st.v[static_cast<std::size_t>(a)]);
    const cplx db = std::conj(delta);
    out.z.assign(static_cast<std::size_t>(n), 0.0);
    out.v.assign(static_cast<std::size_t>(n), 0.0);
    out.t = 0.0;
    out.w = 0.0;
    for (int g = 0; g < n; ++g) {
      const cplx vg = st.v[static_cast<std::size_t>(g)];
      const cplx vbg = vb[static_cast<std::size_t>(g)];
      const auto& fz = tab_.frame[static_cast<std::size_t>(g)];
      const auto& fzb = tab_.frame_bar[static_cast<std::size_t>(g)];
      out.t += delta * vg * fz[0].evaluate(p) + db * vbg * fzb[0].evaluate(p);
      for (int j = 1; j <= n; ++j) {
        auto& dz = out.z[static_cast<std::size_t>(j - 1)];
        if (!fz[static_cast<std::size_t>(j)].is_zero()) dz += delta * vg * fz[static_cast<std::size_t>(j)].evaluate(p);
        if (!fzb[static_cast<std::size_t>(j)].is_zero()) dz += db * vbg * fzb[static_cast<std::size_t>(j)].evaluate(p);
      }
      out.w += delta * vg * tab_.zw[static_cast<std::size_t>(g)].evaluate(p);
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int g = 0; g < n; ++g) {
          const std::size_t idx = static_cast<std::size_t>((a * n + b) * n + g);
          const cplx va = st.v[static_cast<std::size_t>(a)];
          if (!tab_.omz[idx].is_zero())
            out.v[static_cast<std::size_t>(b)] -= delta * va * st.v[static_cast<std::size_t>(g)] * tab_.omz[idx].evaluate(p);
          if (!tab_.omzb[idx].is_zero())
            out.v[static_cast<std::size_t>(b)] -= db * va * vb[static_cast<std::size_t>(g)] * tab_.omzb[idx].evaluate(p);
        }
  }

  /// RK4 from zeta_a to zeta_b in the given number of steps.
  void walk(State& st, cplx from, cplx to, int steps) const {
    const cplx delta = (to - from) / static_cast<double>(steps);
    State k1, k2, k3, k4, tmp;
    for (int s = 0; s < steps; ++s) {
      derivative(st, delta, k1);
      axpy(st, 0.5, k1, tmp);
      derivative(tmp, delta, k2);
      axpy(st, 0.5, k2, tmp);
      derivative(tmp, delta, k3);
      axpy(st, 1.0, k3, tmp);
      derivative(tmp, delta, k4);
      st.t += (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t) / 6.0;
      st.t = st.t.real();
      st.w += (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w) / 6.0;
      for (std::size_t j = 0; j < st.z.size(); ++j)
        st.z[j] += (k1.z[j] + 2.0 * k2.z[j] + 2.0 * k3.z[j] + k4.z[j]) / 6.0;
      for (std::size_t j = 0; j < st.v.size(); ++j)
        st.v[j] += (k1.v[j] + 2.0 * k2.v[j] + 2.0 * k3.v[j] + k4.v[j]) / 6.0;
    }
  }

  double residual(const State& st) const { return std::abs(st.w - w_.evaluate(point(st))); }

  double null_defect(const State& st) const {
    const int n = tab_.n;
    const algebra::NumericPoint p = point(st);
    cplx acc = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const Coeff& h = tab_.levi[static_cast<std::size_t>(a * n + b)];
        if (!h.is_zero())
          acc += h.evaluate(p) * st.v[static_cast<std::size_t>(a)] * std::conj(st.v[static_cast<std::size_t>(b)]);
      }
    return std::abs(acc);
  }

 private:
  static void axpy(const State& y, double c, const State& k, State& out) {
    out.t = y.t + c * k.t;
    out.w = y.w + c * k.w;
    out.z.resize(y.z.size());
    out.v.resize(y.v.size());
    for (std::size_t j = 0; j < y.z.size(); ++j) out.z[j] = y.z[j] + c * k.z[j];
    for (std::size_t j = 0; j < y.v.size(); ++j) out.v[j] = y.v[j] + c * k.v[j];
  }

  FlowTables tab_;
  Coeff w_;
};

double distance(const State& a, const State& b) {
  double d = std::abs(a.t - b.t);
  for (std::size_t j = 0; j < a.z.size(); ++j) d = std::max(d, std::abs(a.z[j] - b.z[j]));
  for (std::size_t j = 0; j < a.v.size(); ++j) d = std::max(d, std::abs(a.v[j] - b.v[j]));
  return d;
}

std::string describe(cplx zeta, double residual) {
  std::ostringstream os;
  os.precision(6);
  os << "defining-function residual " << residual << " exceeds the abort threshold at zeta = " << zeta.real()
     << (zeta.imag() < 0 ? " - " : " + ") << std::abs(zeta.imag()) << "i";
  return os.str();
}

}  // namespace

GeodesicRun integrate_null_geodesic(const PHStructure& s, const Connection& c, const Coeff& phi,
                                    const algebra::NumericPoint& start, const std::vector<cplx>& v0,
                                    const GeodesicOptions& opt) {
  const int n = s.n;
  if (static_cast<int>(v0.size()) != n || static_cast<int>(start.z.size()) != n)
    throw Error(Errc::dimension_mismatch, "start point and tangent must have n components");
  if (opt.grid < 1 || !(opt.radius > 0) || !(opt.step > 0))
    throw Error(Errc::precondition, "grid, radius and step must be positive");
  GeodesicFlow flow(s, c, phi);
  State init{start.t.real(), start.z, v0, 0.0};
  init.w = Coeff(Coeff::var(n, Var::t()) + phi * GaussianRational(0, 1)).evaluate(flow.point(init));
  bool zero = true;
  for (const auto& x : v0) zero = zero && x == cplx(0.0);
  if (zero) throw Error(Errc::precondition, "zero initial tangent");
  const double nd = flow.null_defect(init);
  if (nd > opt.null_tol)
    throw Error(Errc::precondition, "initial tangent is not null: |h(v0, conj v0)| = " + std::to_string(nd));

  const int g = opt.grid;
  const double spacing = opt.radius / g;
  const int sub = std::max(1, static_cast<int>(std::ceil(spacing / opt.step - 1e-9)));
  const int side = 2 * g + 1;
  auto node = [&](int i, int j) { return cplx(i * spacing, j * spacing); };
  auto slot = [&](int i, int j) { return static_cast<std::size_t>((i + g) * side + (j + g)); };

  // sweep(first_real): integrate along the first axis, then along the other
  // from every node on it.
  auto sweep = [&](bool first_real) {
    std::vector<State> out(static_cast<std::size_t>(side * side));
    auto at = [&](int a, int b) { return first_real ? slot(a, b) : slot(b, a); };
    auto pos = [&](int a, int b) { return first_real ? node(a, b) : node(b, a); };
    out[at(0, 0)] = init;
    for (int dir : {1, -1})
      for (int a = dir; std::abs(a) <= g; a += dir) {
        State st = out[at(a - dir, 0)];
        flow.walk(st, pos(a - dir, 0), pos(a, 0), sub);
        out[at(a, 0)] = st;
      }
    for (int a = -g; a <= g; ++a)
      for (int dir : {1, -1})
        for (int b = dir; std::abs(b) <= g; b += dir) {
          if (std::abs(pos(a, b - dir)) > opt.radius + 1e-12) break;
          State st = out[at(a, b - dir)];
          flow.walk(st, pos(a, b - dir), pos(a, b), sub);
          out[at(a, b)] = st;
        }
    return out;
  };
  const std::vector<State> xy = sweep(true);
  const std::vector<State> yx = sweep(false);

  GeodesicRun run;
  run.n = n;
  for (int i = -g; i <= g; ++i)
    for (int j = -g; j <= g; ++j) {
      const cplx zeta = node(i, j);
      if (std::abs(zeta) > opt.radius + 1e-12) continue;
      const State& st = xy[slot(i, j)];
      GeodesicSample smp;
      smp.zeta = zeta;
      smp.t = st.t.real();
      smp.z = st.z;
      smp.v = st.v;
      smp.w = st.w;
      smp.residual_r = flow.residual(st);
      smp.null_defect = flow.null_defect(st);
      smp.commutativity_defect = distance(st, yx[slot(i, j)]);
      if (smp.residual_r > opt.abort_residual) throw Error(Errc::numeric_breach, describe(zeta, smp.residual_r));
      run.max_residual = std::max(run.max_residual, smp.residual_r);
      run.max_null_defect = std::max(run.max_null_defect, smp.null_defect);
      run.max_commutativity_defect = std::max(run.max_commutativity_defect, smp.commutativity_defect);
      run.samples.push_back(std::move(smp));
    }
  return run;
}

void write_csv(std::ostream& os, const GeodesicRun& run) {
  os << "zeta_re,zeta_im,t";
  for (int j = 1; j <= run.n; ++j) os << ",z" << j << "_re,z" << j << "_im";
  os << ",residual_r,null_defect\n";
  os.precision(17);
  for (const auto& s : run.samples) {
    os << s.zeta.real() << ',' << s.zeta.imag() << ',' << s.t;
    for (const auto& z : s.z) os << ',' << z.real() << ',' << z.imag();
    os << ',' << s.residual_r << ',' << s.null_defect << '\n';
  }
}

}  // namespace crgeom::geodesics

#include "crgeom/cli/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

#include "crgeom/algebra/parser.hpp"
#include "crgeom/dynamics/flow.hpp"
#include "crgeom/error.hpp"
#include "crgeom/geodesics/projective.hpp"

namespace crgeom::cli {

using algebra::Coeff;
using algebra::GaussianRational;
using exterior::Form;
using nlohmann::json;

namespace {

/// Bad flags or flag values; maps to exit 64.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string idx(std::initializer_list<int> is) {
  std::string s;
  for (int i : is) s += "[" + std::to_string(i + 1) + "]";
  return s;
}

class CheckList {
 public:
  explicit CheckList(bool timings) : timings_(timings) {}

  void add(const std::string& name, const std::string& anchor, bool pass, const std::string& residual, double ms) {
    json c{{"name", name}, {"paper_anchor", anchor}, {"status", pass ? "pass" : "fail"}, {"residual_summary", residual}};
    if (timings_) c["runtime_ms"] = ms;
    checks_.push_back(c);
    all_ = all_ && pass;
  }
  const json& checks() const { return checks_; }
  bool all_pass() const { return all_ && !checks_.empty(); }

 private:
  bool timings_;
  bool all_ = true;
  json checks_ = json::array();
};

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string summary(const Coeff& c) { return c.is_zero() ? "0" : c.to_string(); }

std::string summary(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number() && j == 0) return "0";
  return j.dump();
}

json conventions() {
  return {{"levi", "dtheta = i h_{a bbar} theta^a ^ conj theta^b"},
          {"reeb", "theta(T) = 1, i_T dtheta = 0"},
          {"connection", "d theta^b = theta^a ^ omega_a^b + A^b_{cbar} theta ^ conj theta^c, A_{ab} = A_{ba}"},
          {"metric", "d h_{a bbar} = omega_{a bbar} + conj(omega_{b abar}), omega_{a bbar} = omega_a^c h_{c bbar}"},
          {"curvature", "R_a^b_{r sbar} = Omega_a^b(Z_r, conj Z_s), Omega = d omega - omega ^ omega"},
          {"ricci", "R_{r sbar} = R_g^g_{r sbar}"},
          {"scalar", "h^{r sbar} R_{r sbar}"},
          {"indices", "1-based in printed names"}};
}

bool is_reference_example(const examples::ExampleSpec& spec) { return spec.kind == examples::Kind::pq && spec.p == 2 && spec.q == 2; }

}  // namespace

std::string format_in_coframe(const ph::PHStructure& s, const Form& w) {
  std::vector<std::pair<std::string, Coeff>> parts;
  parts.emplace_back("theta", exterior::evaluate(w, s.reeb));
  for (int a = 0; a < s.n; ++a)
    parts.emplace_back("theta" + std::to_string(a + 1), exterior::evaluate(w, s.frame[static_cast<std::size_t>(a)]));
  for (int a = 0; a < s.n; ++a)
    parts.emplace_back("thetab" + std::to_string(a + 1),
                       exterior::evaluate(w, s.frame[static_cast<std::size_t>(a)].conj()));
  std::string out;
  for (const auto& [name, c] : parts) {
    if (c.is_zero()) continue;
    std::string term;
    if (c == Coeff::one(c.arity())) term = name;
    else if (c == -Coeff::one(c.arity())) term = "-" + name;
    else if (c.size() == 1) term = c.to_string() + "*" + name;
    else term = "(" + c.to_string() + ")*" + name;
    if (out.empty()) out = term;
    else if (term[0] == '-') out += " - " + term.substr(1);
    else out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

std::vector<std::pair<std::string, std::string>> invariant_entries(const examples::ExampleBuild& b,
                                                                   const std::string& target) {
  const int n = b.structure.n;
  std::vector<std::pair<std::string, std::string>> out;
  if (target == "connection") {
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        const Form& w = b.connection.omega[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
        if (!w.is_zero()) out.emplace_back("omega" + idx({a, c}), format_in_coframe(b.structure, w));
      }
    if (out.empty()) out.emplace_back("omega", "0");
    bool torsion = false;
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        const Coeff& t = b.connection.torsion[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
        if (t.is_zero()) continue;
        torsion = true;
        out.emplace_back("A" + idx({a, c}), t.to_string());
      }
    if (!torsion) out.emplace_back("A", "0");
  } else if (target == "curvature" || target == "chern") {
    const ph::Tensor4& t = target == "curvature" ? b.curvature.R : b.curvature.chern;
    const std::string sym = target == "curvature" ? "R" : "S";
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s)
            if (!t(a, c, r, s).is_zero()) out.emplace_back(sym + idx({a, c, r, s}), t(a, c, r, s).to_string());
    if (out.empty()) out.emplace_back(sym, "0");
  } else if (target == "ricci" || target == "levi") {
    const algebra::CoeffMatrix& m = target == "ricci" ? b.curvature.ricci : b.structure.levi;
    const std::string sym = target == "ricci" ? "ricci" : "h";
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) out.emplace_back(sym + idx({a, c}), summary(m(a, c)));
  } else {
    throw Error(Errc::precondition, "unknown invariant target '" + target + "'");
  }
  return out;
}

json verify_report(const examples::ExampleSpec& spec, bool timings) {
  CheckList checks(timings);
  Stopwatch sw;
  const int n = spec.n;
  try {
    const ph::PHStructure s = examples::structure_of(spec);
    checks.add("structure invariants: theta(T) = 1, i_T dtheta = 0, dtheta = i h theta^a ^ conj theta^b",
               "admissible coframe", ph::check_structure(s).is_zero(), "exact", sw.lap());
    const bool sig = s.signature.positive == spec.p && s.signature.negative == spec.q && s.signature.zero == 0;
    checks.add("Levi signature == (" + std::to_string(spec.p) + "," + std::to_string(spec.q) + ")", "signature (p,q)",
               sig, std::to_string(s.signature.positive) + "," + std::to_string(s.signature.negative), sw.lap());

    const ph::Connection c = ph::solve_connection(s);
    checks.add("Tanaka-Webster structure equations", "Tanaka--Webster connection",
               ph::verify_connection(s, c).is_zero(), "exact", sw.lap());
    checks.add("torsion == 0", "a torsion-free contact form", c.torsion_free(), "exact", sw.lap());
    if (is_reference_example(spec)) {
      bool only = true;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const Form expected = a == 0 && b == 1 ? Coeff(4, GaussianRational(4)) * Coeff::var(4, algebra::Var::zbar(1)) * s.coframe[0]
                                                 : Form(4, 1);
          only = only && c.omega[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == expected;
        }
      checks.add("omega_1^2 == 4*zb1*theta1, all other entries zero",
                 "only nonvanishing Tanaka--Webster connection one-form", only,
                 format_in_coframe(s, c.omega[0][1]), sw.lap());
    }

    const ph::CurvatureData cd = ph::curvature(s, c);
    checks.add("Omega = R theta^r ^ conj theta^s", "curvature", true, "exact", sw.lap());
    if (is_reference_example(spec)) {
      bool others = true;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int r = 0; r < n; ++r)
            for (int q = 0; q < n; ++q)
              if (!(a == 0 && b == 1 && r == 0 && q == 0)) others = others && cd.R(a, b, r, q).is_zero();
      checks.add("R_1^2_{11bar} == -4", "curvature display", cd.R(0, 1, 0, 0) == Coeff(4, GaussianRational(-4)),
                 summary(cd.R(0, 1, 0, 0)), sw.lap());
      checks.add("all other curvature components == 0", "all other components of the curvature", others, "exact",
                 sw.lap());
    }
    checks.add("Ricci == 0", "vanishes identically", cd.ricci.is_zero() && cd.scalar.is_zero(), "exact", sw.lap());
    checks.add("Chern == R", "agrees with", cd.chern == cd.R, "exact", sw.lap());
    checks.add("Chern != 0", "not locally CR flat", !cd.chern.is_zero(), "exact", sw.lap());
    const std::vector<int> image = ph::chern_image(cd);
    std::string img = "span{";
    for (std::size_t i = 0; i < image.size(); ++i) img += (i ? ", Z_" : "Z_") + std::to_string(image[i] + 1);
    img += "}";
    checks.add("Chern image is spanned by one frame vector", "the complex span of Z_2", image.size() == 1, img,
               sw.lap());

    const auto action = dynamics::verify_action_invariants(spec);
    for (const auto& e : action.entries())
      checks.add(e.identity, "acts by homotheties of the contact form", e.pass, summary(e.residual), sw.lap());
    int lebesgue = spec.gamma.t_weight().s;
    for (const auto& w : spec.gamma.z_weights()) lebesgue += 2 * w.s;
    const GaussianRational rate = dynamics::contact_volume_rate(spec);
    checks.add("L_X vol = " + std::to_string(-lebesgue) + " vol", "an attractor of the flow",
               rate == GaussianRational(-lebesgue), rate.to_string(), sw.lap());
    const dynamics::FlowModel model(spec);
    const dynamics::FlowState origin = model.flow(model.on_manifold(0.0, std::vector<dynamics::cplx>(static_cast<std::size_t>(n))), 1.0);
    bool fixed = origin.w == dynamics::cplx(0.0);
    for (const auto& z : origin.z) fixed = fixed && z == dynamics::cplx(0.0);
    checks.add("origin fixed by the homothety", "fixes the origin", fixed, "exact", sw.lap());

    if (image.size() == 1) {
      const int k = image[0];
      const std::string zk = "Z_" + std::to_string(k + 1);
      const auto leaf = geodesics::verify_leaf_geodesic(s, c, s.frame[static_cast<std::size_t>(k)]);
      for (const auto& e : leaf.report.entries())
        checks.add("leaf " + zk + ": " + e.identity, "in fact complex null geodesics", e.pass, summary(e.residual),
                   sw.lap());
      checks.add("leaf " + zk + ": u == 0", "in fact complex null geodesics", leaf.u && leaf.u->is_zero(),
                 leaf.u ? summary(*leaf.u) : "none", sw.lap());
      const geodesics::NullCurve curve = geodesics::NullCurve::leaf(n, k + 1);
      const Coeff q = geodesics::projective_parameter_rhs(s, c, curve);
      const Coeff u = geodesics::geodesic_coefficient(s, c, curve);
      checks.add("projective parameter of the leaf is z_" + std::to_string(k + 1) + " up to Mobius",
                 "is the projective parameter of", q.is_zero() && u.is_zero(), "Q = " + summary(q) + ", u = " + summary(u),
                 sw.lap());
    }
  } catch (const Error& e) {
    checks.add("pipeline", "", false, std::string(errc_name(e.code())) + ": " + e.what(), sw.lap());
  }
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "verify";
  j["example"] = spec.label();
  j["inferred"] = spec.inferred;
  j["checks"] = checks.checks();
  j["overall"] = checks.all_pass() ? "pass" : "fail";
  j["conventions"] = conventions();
  return j;
}

namespace {

examples::ExampleSpec spec_arg(const std::string& label) {
  try {
    return examples::spec_from_label(label);
  } catch (const Error& e) {
    if (e.code() == Errc::precondition) throw UsageError(e.what());
    throw;
  }
}

mpq_class rational_arg(const std::string& name, const std::string& text) {
  try {
    const Coeff c = algebra::parse_expr(text, 0);
    const GaussianRational v = c.constant_value();
    if (!c.is_constant() || !v.is_real()) throw UsageError("--" + name + " must be a real number");
    return v.re();
  } catch (const ParseError& e) {
    throw UsageError("--" + name + ": " + e.what());
  }
}

std::vector<std::complex<double>> complex_list(const std::string& name, const std::string& text) {
  std::vector<std::complex<double>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      const Coeff c = algebra::parse_expr(item, 0);
      if (!c.is_constant()) throw UsageError("--" + name + " entries must be constants");
      out.push_back(c.constant_value().to_complex());
    } catch (const ParseError& e) {
      throw UsageError("--" + name + ": " + e.what());
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << content;
}

int emit_verify(const json& j, bool as_json, std::ostream& out) {
  if (as_json) {
    out << j.dump(2) << '\n';
  } else {
    out << "example " << j["example"].get<std::string>() << '\n';
    for (const auto& c : j["checks"]) {
      out << (c["status"] == "pass" ? "PASS " : "FAIL ") << c["name"].get<std::string>();
      const std::string r = c["residual_summary"].get<std::string>();
      if (r != "exact") out << "  [" << r << "]";
      if (c.contains("runtime_ms")) out << "  (" << c["runtime_ms"].get<double>() << " ms)";
      out << '\n';
    }
    out << "overall: " << j["overall"].get<std::string>() << '\n';
  }
  return j["overall"] == "pass" ? kOk : kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numeric checks for mixed-signature CR examples", "crgeom"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string emit = "text";
  std::uint64_t seed = 0;
  bool timings = false;
  app.add_option("--emit", emit, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "Seed for every pseudo-random choice");
  app.add_flag("--timings", timings, "Add runtime_ms fields (breaks byte-stability)");

  auto* verify = app.add_subcommand("verify", "Run the verification pipeline on one example");
  std::string signature;
  verify->add_option("--signature", signature, "p,q | pq:p,q | lorentzian:n")->required();

  auto* inv = app.add_subcommand("invariants", "Print connection, curvature, ricci, chern or levi");
  std::string example = "2,2";
  std::string target;
  inv->add_option("--example", example, "Example label");
  inv->add_option("--target", target, "connection|curvature|ricci|chern|levi")
      ->required()
      ->check(CLI::IsMember({"connection", "curvature", "ricci", "chern", "levi"}));

  auto* flow = app.add_subcommand("flow", "Attractor run of the essential flow");
  std::string alpha = "-1", beta = "-5/4";
  int seeds = 100;
  double tau = 10.0, dt = 0.1;
  std::string csv_path, json_path;
  bool rk4 = false;
  flow->add_option("--example", example, "Example label");
  flow->add_option("--alpha", alpha, "Deck parameter alpha (rational)");
  flow->add_option("--beta", beta, "Deck parameter beta (rational)");
  flow->add_option("--seeds", seeds, "Number of seeds");
  flow->add_option("--tau", tau, "Final flow time");
  flow->add_option("--dt", dt, "Sample spacing");
  flow->add_option("--csv", csv_path, "Write the first seed's trajectory as CSV");
  flow->add_option("--json", json_path, "Write the JSON summary to a file");
  flow->add_flag("--rk4", rk4, "Cross-check the closed form with RK4");

  auto* geo = app.add_subcommand("geodesic", "Integrate a complex null geodesic");
  bool leaf = false;
  std::string start, tangent;
  geodesics::GeodesicOptions gopt;
  geo->add_option("--example", example, "Example label");
  geo->add_flag("--leaf", leaf, "Start on the Chern-image leaf through z_k = 1");
  geo->add_option("--start", start, "t,z1,...,zn (constant expressions)");
  geo->add_option("--tangent", tangent, "v1,...,vn frame components");
  geo->add_option("--radius", gopt.radius, "Parameter disc radius");
  geo->add_option("--grid", gopt.grid, "Grid nodes per half-axis");
  geo->add_option("--step", gopt.step, "RK4 step");
  geo->add_option("--csv", csv_path, "Write samples as CSV");

  auto* sch = app.add_subcommand("schwarzian", "Exact Schwarzian derivative of a rational map");
  std::string map, compose_with;
  sch->add_option("--map", map, "Rational map in z")->required();
  sch->add_option("--compose-with", compose_with, "w: also print the chain-rule residual for p o w");

  std::vector<std::string> argv_store{"crgeom"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  const bool as_json = emit == "json";

  try {
    if (*verify) return emit_verify(verify_report(spec_arg(signature), timings), as_json, out);

    if (*inv) {
      const auto spec = spec_arg(example);
      const auto b = examples::build(spec);
      const auto entries = invariant_entries(b, target);
      if (as_json) {
        json j{{"schema", kSchemaVersion}, {"command", "invariants"}, {"example", spec.label()}, {"target", target}};
        j["entries"] = json::array();
        for (const auto& [k, v] : entries) j["entries"].push_back({{"name", k}, {"value", v}});
        out << j.dump(2) << '\n';
      } else {
        for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
      }
      return kOk;
    }

    if (*flow) {
      const auto spec = spec_arg(example);
      examples::QuotientParams qp{rational_arg("alpha", alpha), rational_arg("beta", beta)};
      try {
        examples::validate(qp);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      if (seeds < 1) throw UsageError("empty run: --seeds must be at least 1");
      if (!(tau > 0) || !(dt > 0)) throw UsageError("--tau and --dt must be positive");
      dynamics::AttractorOptions opt;
      opt.seeds = seeds;
      opt.tau_end = tau;
      opt.sample_dt = dt;
      opt.seed = seed;
      opt.rk4_cross_check = rk4;
      const auto q = dynamics::QuotientSpec::from(qp);
      const auto rep = dynamics::attractor_report(spec, q, opt);
      json j = rep.to_json();
      j["schema"] = kSchemaVersion;
      j["command"] = "flow";
      if (!csv_path.empty()) {
        const dynamics::FlowModel m(spec);
        std::ostringstream os;
        dynamics::write_csv(os, dynamics::trajectory(m, q, dynamics::random_seed(m, q, seed, 0), tau, dt));
        write_file(csv_path, os.str());
      }
      if (!json_path.empty()) write_file(json_path, j.dump(2) + "\n");
      if (as_json) {
        out << j.dump(2) << '\n';
      } else {
        for (const auto& f : rep.fits)
          out << "rate " << f.name << " = " << f.rate_mean << " (expected " << f.expected << ", min R^2 "
              << f.r_squared_min << ")\n";
        out << "residual_max = " << rep.residual_max << '\n';
        out << "overall: " << (rep.pass ? "pass" : "fail") << '\n';
      }
      return rep.pass ? kOk : kVerifyFailed;
    }

    if (*geo) {
      const auto spec = spec_arg(example);
      const auto b = examples::build(spec);
      const int n = spec.n;
      algebra::NumericPoint p0;
      std::vector<std::complex<double>> v0;
      int k = -1;
      if (leaf) {
        const auto image = ph::chern_image(b.curvature);
        if (image.size() != 1) throw Error(Errc::precondition, "Chern image is not one-dimensional");
        k = image[0];
        std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
        z[static_cast<std::size_t>(k)] = 1.0;
        p0 = algebra::NumericPoint::real(0.0, z);
        v0.assign(static_cast<std::size_t>(n), 0.0);
        v0[static_cast<std::size_t>(k)] = 1.0;
      } else {
        if (start.empty() || tangent.empty()) throw UsageError("geodesic needs --leaf or both --start and --tangent");
        const auto st = complex_list("start", start);
        v0 = complex_list("tangent", tangent);
        if (static_cast<int>(st.size()) != n + 1 || static_cast<int>(v0.size()) != n)
          throw UsageError("--start needs n+1 entries and --tangent n entries");
        if (st[0].imag() != 0) throw UsageError("t must be real");
        p0 = algebra::NumericPoint::real(st[0].real(), {st.begin() + 1, st.end()});
      }
      const auto run = geodesics::integrate_null_geodesic(b.structure, b.connection, spec.phi, p0, v0, gopt);
      json j{{"schema", kSchemaVersion},
             {"command", "geodesic"},
             {"example", spec.label()},
             {"samples", run.samples.size()},
             {"max_residual", run.max_residual},
             {"max_null_defect", run.max_null_defect},
             {"max_commutativity_defect", run.max_commutativity_defect}};
      bool pass = true;
      if (leaf) {
        double dev = 0;
        for (const auto& smp : run.samples) {
          dev = std::max(dev, std::abs(smp.t));
          for (int j2 = 0; j2 < n; ++j2) {
            const std::complex<double> exact = j2 == k ? 1.0 + smp.zeta : 0.0;
            dev = std::max(dev, std::abs(smp.z[static_cast<std::size_t>(j2)] - exact));
          }
        }
        j["leaf"] = "z" + std::to_string(k + 1);
        j["max_leaf_deviation"] = dev;
        pass = dev < 1e-8;
      }
      j["pass"] = pass;
      if (!csv_path.empty()) {
        std::ostringstream os;
        geodesics::write_csv(os, run);
        write_file(csv_path, os.str());
      }
      if (as_json) {
        out << j.dump(2) << '\n';
      } else {
        for (auto it = j.begin(); it != j.end(); ++it)
          if (it.key() != "schema" && it.key() != "command") out << it.key() << " = " << it.value().dump() << '\n';
      }
      return pass ? kOk : kVerifyFailed;
    }

    if (*sch) {
      const auto p = geodesics::parse_rational_map(map);
      const auto s = geodesics::schwarzian_exact(p);
      json j{{"schema", kSchemaVersion}, {"command", "schwarzian"}, {"map", p.to_string()}, {"schwarzian", s.to_string()}};
      if (!compose_with.empty())
        j["chain_rule_residual"] = geodesics::chain_rule_residual(p, geodesics::parse_rational_map(compose_with)).to_string();
      if (as_json) {
        out << j.dump(2) << '\n';
      } else {
        out << s.to_string() << '\n';
        if (j.contains("chain_rule_residual")) out << "chain rule residual: " << j["chain_rule_residual"].get<std::string>() << '\n';
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kData;
  } catch (const Error& e) {
    err << errc_name(e.code()) << ": " << e.what() << '\n';
    return e.code() == Errc::internal ? kInternal : kData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

}  // namespace crgeom::cli

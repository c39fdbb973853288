#include "crgeom/pseudohermitian/connection.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "crgeom/algebra/linear_system.hpp"
#include "crgeom/error.hpp"

namespace crgeom::ph {

using algebra::Monomial;
using algebra::SparseRationalSystem;

Connection Connection::zero(int n) {
  Connection c;
  c.omega.assign(static_cast<std::size_t>(n), std::vector<Form>(static_cast<std::size_t>(n), Form(n, 1)));
  c.torsion.assign(static_cast<std::size_t>(n), std::vector<Coeff>(static_cast<std::size_t>(n), Coeff(n)));
  return c;
}

bool Connection::torsion_free() const {
  for (const auto& row : torsion)
    for (const auto& a : row)
      if (!a.is_zero()) return false;
  return true;
}

Coeff Connection::omega_on(int a, int b, const VectorField& x) const {
  return exterior::evaluate(omega[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], x);
}

Form lowered_omega(const PHStructure& s, const Connection& c, int a, int b) {
  Form w(s.n, 1);
  for (int g = 0; g < s.n; ++g)
    if (!s.levi(g, b).is_zero()) w += s.levi(g, b) * c.omega[a][g];
  return w;
}

namespace {

struct LinTerm {
  int var;
  bool conj;  // the term is conj(X_var)
  GaussianRational lambda;
};

struct Equation {
  std::vector<LinTerm> lhs;
  Coeff rhs;
};

int max_input_degree(const PHStructure& s) {
  int deg = 0;
  for (const auto& [m, c] : s.theta.components()) deg = std::max(deg, c.degree());
  for (const auto& f : s.coframe)
    for (const auto& [m, c] : f.components()) deg = std::max(deg, c.degree());
  return std::max(deg, s.levi.max_degree());
}

}  // namespace

Connection solve_connection(const PHStructure& s, SolveInfo* info) {
  const int n = s.n, dim = s.dim();
  const int data_degree = max_input_degree(s);
  const int bound = data_degree + 4;
  if (bound > 16)
    throw Error(Errc::degree_bound_exceeded, "degree bound exceeded: input degree " + std::to_string(data_degree) +
                                                 " needs bound " + std::to_string(bound) + " > 16");

  auto c_var = [&](int a, int r, int k) { return (a * n + r) * dim + k; };
  const int a_base = n * n * dim;
  auto a_var = [&](int r, int sg) {
    const int lo = std::min(r, sg), hi = std::max(r, sg);
    return a_base + hi * (hi + 1) / 2 + lo;
  };
  const int vars = a_base + n * (n + 1) / 2;
  auto bar = [&](int k) { return k == 0 ? 0 : (k <= n ? k + n : k - n); };

  std::vector<VectorField> e;
  for (int k = 0; k < dim; ++k) e.push_back(s.frame_at(k));

  std::vector<Equation> eqs;
  const GaussianRational one(1), minus_one(-1);
  // First structure equation, lowered with h_{b rbar}.
  for (int r = 0; r < n; ++r) {
    Form lr(n, 2);
    for (int b = 0; b < n; ++b)
      if (!s.levi(b, r).is_zero()) lr += s.levi(b, r) * exterior::d(s.coframe[b], s.ctx);
    for (int a = 0; a < dim; ++a)
      for (int b = a + 1; b < dim; ++b) {
        Equation q{{}, exterior::evaluate(lr, e[a], e[b])};
        if (a >= 1 && a <= n) q.lhs.push_back({c_var(a - 1, r, b), false, one});
        if (b >= 1 && b <= n) q.lhs.push_back({c_var(b - 1, r, a), false, minus_one});
        if (a == 0 && b > n) q.lhs.push_back({a_var(r, b - n - 1), true, one});
        eqs.push_back(std::move(q));
      }
  }
  // Metric compatibility evaluated on each frame vector.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < dim; ++k) {
        Equation q{{{c_var(a, b, k), false, one}, {c_var(b, a, bar(k)), true, one}}, e[k].apply(s.levi(a, b), s.ctx)};
        eqs.push_back(std::move(q));
      }

  // Monomial classes {m, conj m}; the constant class is always solved so
  // that uniqueness is checked even for flat data.
  std::set<Monomial> classes{Monomial{}};
  for (const auto& q : eqs)
    for (const auto& t : q.rhs.terms()) {
      if (t.mono.degree() > bound)
        throw Error(Errc::degree_bound_exceeded,
                    "degree bound exceeded: solution needs degree " + std::to_string(t.mono.degree()) + " > " +
                        std::to_string(bound));
      classes.insert(std::min(t.mono, t.mono.conj()));
    }

  std::vector<std::vector<algebra::Term>> sol(static_cast<std::size_t>(vars));
  int unknowns_per_class = 0;
  for (const Monomial& m : classes) {
    const Monomial mb = m.conj();
    const int nmon = (mb == m) ? 1 : 2;
    const Monomial mons[2] = {m, mb};
    auto id = [&](int v, int which, int part) { return (v * nmon + (nmon == 1 ? 0 : which)) * 2 + part; };
    SparseRationalSystem sys(vars * nmon * 2);
    unknowns_per_class = std::max(unknowns_per_class, sys.unknowns());
    for (const auto& q : eqs) {
      for (int w = 0; w < nmon; ++w) {
        SparseRationalSystem::Row re_row, im_row;
        for (const auto& t : q.lhs) {
          const mpq_class& lr = t.lambda.re();
          const mpq_class& li = t.lambda.im();
          const int which = t.conj ? 1 - w : w;
          const int x = id(t.var, which, 0), y = id(t.var, which, 1);
          if (!t.conj) {
            re_row[x] += lr, re_row[y] -= li;
            im_row[x] += li, im_row[y] += lr;
          } else {
            re_row[x] += lr, re_row[y] += li;
            im_row[x] += li, im_row[y] -= lr;
          }
        }
        const GaussianRational rhs = q.rhs.coeff_of(mons[w]);
        sys.add_equation(std::move(re_row), rhs.re());
        sys.add_equation(std::move(im_row), rhs.im());
      }
    }
    const auto res = sys.solve();
    if (res.status == SparseRationalSystem::Status::inconsistent)
      throw Error(Errc::convention_violation,
                  "convention violation: structure equations have no solution for monomial class of degree " +
                      std::to_string(m.degree()));
    if (res.status == SparseRationalSystem::Status::underdetermined)
      throw Error(Errc::internal, "connection system is underdetermined (rank " + std::to_string(res.rank) + ")");
    for (int v = 0; v < vars; ++v)
      for (int w = 0; w < nmon; ++w) {
        GaussianRational val(res.values[static_cast<std::size_t>(id(v, w, 0))],
                             res.values[static_cast<std::size_t>(id(v, w, 1))]);
        if (!val.is_zero()) sol[static_cast<std::size_t>(v)].push_back({mons[w], val});
      }
  }
  if (info) *info = {bound, data_degree, static_cast<int>(classes.size()), unknowns_per_class};

  auto value = [&](int v) { return Coeff::from_terms(n, sol[static_cast<std::size_t>(v)]); };
  std::vector<Form> basis;
  for (int k = 0; k < dim; ++k) basis.push_back(s.coframe_at(k));

  Connection c = Connection::zero(n);
  std::vector<std::vector<Form>> low(static_cast<std::size_t>(n), std::vector<Form>(static_cast<std::size_t>(n), Form(n, 1)));
  for (int a = 0; a < n; ++a)
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < dim; ++k) {
        const Coeff v = value(c_var(a, r, k));
        if (!v.is_zero()) low[a][r] += v * basis[k];
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Form w(n, 1);
      for (int r = 0; r < n; ++r)
        if (!s.levi_inv(b, r).is_zero()) w += s.levi_inv(b, r) * low[a][r];
      c.omega[a][b] = std::move(w);
      c.torsion[a][b] = value(a_var(a, b));
    }
  return c;
}

bool ConnectionResidual::is_zero() const {
  for (const auto& f : structure)
    if (!f.is_zero()) return false;
  for (const auto& row : metric)
    for (const auto& f : row)
      if (!f.is_zero()) return false;
  for (const auto& row : symmetry)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

ConnectionResidual verify_connection(const PHStructure& s, const Connection& c) {
  const int n = s.n;
  if (static_cast<int>(c.omega.size()) != n || static_cast<int>(c.torsion.size()) != n)
    throw Error(Errc::dimension_mismatch, "connection shape does not match the structure");
  ConnectionResidual r;
  const Form theta = s.theta;
  for (int b = 0; b < n; ++b) {
    Form res = exterior::d(s.coframe[b], s.ctx);
    for (int a = 0; a < n; ++a) res -= exterior::wedge(s.coframe[a], c.omega[a][b]);
    for (int sg = 0; sg < n; ++sg) {
      Coeff raised(n);
      for (int g = 0; g < n; ++g) raised += s.levi_inv(b, g) * c.torsion[g][sg].conj();
      if (!raised.is_zero()) res -= raised * exterior::wedge(theta, s.coframe[sg].conj());
    }
    r.structure.push_back(std::move(res));
  }
  r.metric.assign(static_cast<std::size_t>(n), {});
  r.symmetry.assign(static_cast<std::size_t>(n), {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Form res = exterior::d(Form::function(s.levi(a, b)), s.ctx) - lowered_omega(s, c, a, b) -
                 lowered_omega(s, c, b, a).conj();
      r.metric[a].push_back(std::move(res));
      r.symmetry[a].push_back(c.torsion[a][b] - c.torsion[b][a]);
    }
  return r;
}

}  // namespace crgeom::ph

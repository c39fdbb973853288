#include "crgeom/pseudohermitian/curvature.hpp"

#include "crgeom/error.hpp"

namespace crgeom::ph {

Tensor4::Tensor4(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n * n), Coeff(n)) {}

bool Tensor4::is_zero() const {
  for (const auto& c : data_)
    if (!c.is_zero()) return false;
  return true;
}

bool operator==(const Tensor4& x, const Tensor4& y) { return x.n_ == y.n_ && x.data_ == y.data_; }

Tensor4 lower_first(const Tensor4& r, const CoeffMatrix& h) {
  const int n = r.n();
  Tensor4 out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          Coeff v(n);
          for (int g = 0; g < n; ++g)
            if (!r(a, g, p, q).is_zero() && !h(g, b).is_zero()) v += r(a, g, p, q) * h(g, b);
          out(a, b, p, q) = std::move(v);
        }
  return out;
}

Tensor4 raise_second(const Tensor4& low, const CoeffMatrix& hinv) {
  const int n = low.n();
  Tensor4 out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          Coeff v(n);
          for (int g = 0; g < n; ++g)
            if (!low(a, g, p, q).is_zero() && !hinv(b, g).is_zero()) v += low(a, g, p, q) * hinv(b, g);
          out(a, b, p, q) = std::move(v);
        }
  return out;
}

namespace {

CoeffMatrix ricci_of(const Tensor4& low, const CoeffMatrix& hinv) {
  const int n = low.n();
  CoeffMatrix ric(n, n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (!hinv(a, b).is_zero() && !low(a, b, p, q).is_zero()) ric(p, q) += hinv(a, b) * low(a, b, p, q);
  return ric;
}

Coeff trace2(const CoeffMatrix& m, const CoeffMatrix& hinv) {
  Coeff v(m.arity());
  for (int a = 0; a < m.rows(); ++a)
    for (int b = 0; b < m.cols(); ++b)
      if (!hinv(a, b).is_zero() && !m(a, b).is_zero()) v += hinv(a, b) * m(a, b);
  return v;
}

}  // namespace

Tensor4 chern_part(const Tensor4& low, const CoeffMatrix& h, const CoeffMatrix& hinv) {
  const int n = low.n();
  const CoeffMatrix ric = ricci_of(low, hinv);
  const Coeff scal = trace2(ric, hinv);
  const GaussianRational k1 = GaussianRational::rational(1, n + 2);
  const GaussianRational k2 = GaussianRational::rational(1, (n + 1) * (n + 2));
  Tensor4 s(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          Coeff v = low(a, b, p, q);
          const Coeff corr = ric(a, b) * h(p, q) + ric(p, b) * h(a, q) + ric(a, q) * h(p, b) + ric(p, q) * h(a, b);
          if (!corr.is_zero()) v -= k1 * corr;
          if (!scal.is_zero()) v += k2 * (scal * (h(a, b) * h(p, q) + h(a, q) * h(p, b)));
          s(a, b, p, q) = std::move(v);
        }
  return s;
}

std::array<CoeffMatrix, 4> traces(const Tensor4& low, const CoeffMatrix& hinv) {
  const int n = low.n();
  std::array<CoeffMatrix, 4> out;
  for (auto& m : out) m = CoeffMatrix(n, n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          const Coeff& g = hinv(u, v);
          if (g.is_zero()) continue;
          out[0](x, y) += g * low(u, v, x, y);
          out[1](x, y) += g * low(u, x, y, v);
          out[2](x, y) += g * low(x, v, u, y);
          out[3](x, y) += g * low(x, y, u, v);
        }
  return out;
}

CurvatureData curvature(const PHStructure& s, const Connection& c, CurvatureOptions opts) {
  const int n = s.n;
  if (!c.torsion_free() && !opts.allow_torsion)
    throw Error(Errc::torsion_unsupported, "torsion-full curvature unsupported: A is not identically zero");

  CurvatureData out;
  out.n = n;
  out.R = Tensor4(n);
  for (int a = 0; a < n; ++a) {
    std::vector<Form> row;
    for (int b = 0; b < n; ++b) {
      Form om = exterior::d(c.omega[a][b], s.ctx);
      for (int g = 0; g < n; ++g) om -= exterior::wedge(c.omega[a][g], c.omega[g][b]);
      row.push_back(std::move(om));
    }
    out.omega2.push_back(std::move(row));
  }
  out.reconstruction_residual.assign(static_cast<std::size_t>(n), {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Form rest = out.omega2[a][b];
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          Coeff v = exterior::evaluate(out.omega2[a][b], s.frame_at(p + 1), s.frame_at(n + q + 1));
          if (!v.is_zero()) rest -= v * exterior::wedge(s.coframe_at(p + 1), s.coframe_at(n + q + 1));
          out.R(a, b, p, q) = std::move(v);
        }
      if (!opts.allow_torsion && !rest.is_zero())
        throw Error(Errc::unexpected_curvature, "unexpected curvature terms in Omega_" + std::to_string(a + 1) + "^" +
                                                    std::to_string(b + 1));
      out.reconstruction_residual[a].push_back(std::move(rest));
    }

  out.ricci = CoeffMatrix(n, n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int g = 0; g < n; ++g) out.ricci(p, q) += out.R(g, g, p, q);
  out.scalar = trace2(out.ricci, s.levi_inv);
  const Tensor4 low = lower_first(out.R, s.levi);
  out.chern_lower = chern_part(low, s.levi, s.levi_inv);
  out.chern = raise_second(out.chern_lower, s.levi_inv);
  return out;
}

std::vector<int> chern_image(const CurvatureData& curv) {
  const int n = curv.n;
  std::vector<int> dirs;
  for (int b = 0; b < n; ++b) {
    bool hit = false;
    for (int a = 0; a < n && !hit; ++a)
      for (int p = 0; p < n && !hit; ++p)
        for (int q = 0; q < n && !hit; ++q) hit = !curv.chern(a, b, p, q).is_zero();
    if (hit) dirs.push_back(b);
  }
  return dirs;
}

Hessian covariant_hessian(const PHStructure& s, const Connection& c, const Coeff& u) {
  const int n = s.n;
  if (u.arity() != n) throw Error(Errc::dimension_mismatch, "function arity does not match the structure");
  Hessian h;
  for (int a = 0; a < n; ++a) h.first.push_back(s.frame[a].apply(u, s.ctx));
  h.pure.assign(static_cast<std::size_t>(n), {});
  h.mixed.assign(static_cast<std::size_t>(n), {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const VectorField zb = s.frame_at(b + 1), zbb = s.frame_at(n + b + 1);
      Coeff pure = zb.apply(h.first[a], s.ctx), mixed = zbb.apply(h.first[a], s.ctx);
      for (int g = 0; g < n; ++g) {
        if (h.first[g].is_zero()) continue;
        pure -= c.omega_on(a, g, zb) * h.first[g];
        mixed -= c.omega_on(a, g, zbb) * h.first[g];
      }
      h.pure[a].push_back(std::move(pure));
      h.mixed[a].push_back(std::move(mixed));
    }
  return h;
}

}  // namespace crgeom::ph

#include "crgeom/algebra/gaussian_rational.hpp"

#include "crgeom/error.hpp"

namespace crgeom {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::division_by_zero: return "division by zero";
    case Errc::dimension_mismatch: return "dimension mismatch";
    case Errc::parse_error: return "parse error";
    case Errc::domain_error: return "domain error";
    case Errc::non_real: return "non-real input";
    case Errc::degenerate: return "degenerate";
    case Errc::non_polynomial_dual_frame: return "non-polynomial dual frame";
    case Errc::inadmissible_coframe: return "inadmissible coframe";
    case Errc::degree_bound_exceeded: return "degree bound exceeded";
    case Errc::convention_violation: return "convention violation";
    case Errc::torsion_unsupported: return "torsion-full curvature unsupported";
    case Errc::unexpected_curvature: return "unexpected curvature terms";
    case Errc::adaptation_failed: return "coframe adaptation failed";
    case Errc::precondition: return "precondition violated";
    case Errc::numeric_breach: return "numeric tolerance breached";
    case Errc::pole_crossed: return "pole crossed";
    case Errc::step_too_large: return "step too large";
    case Errc::internal: return "internal error";
  }
  return "unknown";
}

}  // namespace crgeom

namespace crgeom::algebra {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::rational(long num, long den) {
  if (den == 0) throw Error(Errc::division_by_zero, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return {q, 0};
}

GaussianRational GaussianRational::inv() const {
  if (is_zero()) throw Error(Errc::division_by_zero, "inverse of zero");
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) { return *this *= o.inv(); }

std::string rational_to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return rational_to_string(re_);
  auto imag_part = [](const mpq_class& v) {
    if (v == 1) return std::string("i");
    if (v == -1) return std::string("-i");
    return rational_to_string(v) + "*i";
  };
  if (sgn(re_) == 0) return imag_part(im_);
  mpq_class mag = abs(im_);
  std::string tail = mag == 1 ? std::string("i") : rational_to_string(mag) + "*i";
  return "(" + rational_to_string(re_) + (sgn(im_) < 0 ? " - " : " + ") + tail + ")";
}

}  // namespace crgeom::algebra

#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "crgeom/algebra/gaussian_rational.hpp"

namespace crgeom::geodesics {

using algebra::GaussianRational;

/// Univariate polynomial over Q(i); coefficients low degree first, no
/// trailing zeros (the zero polynomial is empty).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<GaussianRational> coeffs);
  static Poly constant(const GaussianRational& c);
  static Poly z();

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<GaussianRational>& coeffs() const { return c_; }
  const GaussianRational& lead() const { return c_.back(); }

  Poly derivative() const;
  Poly monic() const;
  GaussianRational evaluate(const GaussianRational& x) const;
  std::complex<double> evaluate(std::complex<double> x) const;
  /// this(q(z)).
  Poly compose(const Poly& q) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<GaussianRational> c_;
};

/// Quotient with remainder; throws Error(division_by_zero) for b = 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);  // monic (zero for gcd(0, 0))

/// num / den in lowest terms with monic denominator.
class RationalMap {
 public:
  RationalMap() : num_(), den_(Poly::constant(1)) {}
  RationalMap(Poly num, Poly den);
  RationalMap(const Poly& p) : RationalMap(p, Poly::constant(1)) {}  // NOLINT(implicit)
  static RationalMap constant(const GaussianRational& c) { return RationalMap(Poly::constant(c)); }
  static RationalMap z() { return RationalMap(Poly::z()); }
  /// (a z + b) / (c z + d).
  static RationalMap mobius(const GaussianRational& a, const GaussianRational& b, const GaussianRational& c,
                            const GaussianRational& d);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  RationalMap derivative() const;
  /// this(w(z)).
  RationalMap compose(const RationalMap& w) const;
  std::complex<double> evaluate(std::complex<double> z) const;

  friend RationalMap operator+(const RationalMap& a, const RationalMap& b);
  friend RationalMap operator-(const RationalMap& a, const RationalMap& b);
  friend RationalMap operator*(const RationalMap& a, const RationalMap& b);
  friend RationalMap operator/(const RationalMap& a, const RationalMap& b);
  friend bool operator==(const RationalMap& a, const RationalMap& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string() const;

 private:
  Poly num_, den_;
};

/// Grammar in the variable z: expr := ['-'] term (('+'|'-') term)*,
/// term := factor (('*'|'/') factor)*, factor := base ('^' integer)?,
/// base := integer | 'i' | 'z' | '(' expr ')'. Throws ParseError.
RationalMap parse_rational_map(std::string_view text);

}  // namespace crgeom::geodesics

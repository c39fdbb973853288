#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "crgeom/algebra/gaussian_rational.hpp"

namespace crgeom::algebra {

inline constexpr int kMaxArity = 9;

// Exponent slots: t, z1..z9, zb1..zb9, then the Laurent generators s, a, E.
inline constexpr int kSlotT = 0;
inline constexpr int kSlotZ = 1;
inline constexpr int kSlotZBar = kSlotZ + kMaxArity;
inline constexpr int kSlotS = kSlotZBar + kMaxArity;
inline constexpr int kSlotA = kSlotS + 1;
inline constexpr int kSlotE = kSlotA + 1;
inline constexpr int kSlots = kSlotE + 1;

enum class VarKind { t, z, zbar, s, a, e };

struct Var {
  VarKind kind = VarKind::t;
  int index = 0;  // 1-based for z / zbar

  static Var t() { return {VarKind::t, 0}; }
  static Var z(int j) { return {VarKind::z, j}; }
  static Var zbar(int j) { return {VarKind::zbar, j}; }
  static Var s() { return {VarKind::s, 0}; }
  static Var a() { return {VarKind::a, 0}; }
  static Var e() { return {VarKind::e, 0}; }

  int slot() const;
  bool is_positional() const { return kind == VarKind::t || kind == VarKind::z || kind == VarKind::zbar; }
  std::string name() const;
  friend bool operator==(const Var&, const Var&) = default;
};

/// Exponent vector. t/z/zbar exponents are non-negative; s, a, E are Laurent.
struct Monomial {
  std::array<std::int16_t, kSlots> exp{};

  static Monomial of(Var v, int power = 1);

  int degree() const;  // total degree in t, z, zbar
  /// Free of t, z, zbar: invertible when carried with a nonzero scalar.
  bool is_unit() const { return degree() == 0; }
  bool is_one() const;
  int max_index() const;
  Monomial conj() const;
  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;  // only meaningful for units

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct Term {
  Monomial mono;
  GaussianRational coeff;
};

/// Numeric values for every generator; zbar is normally conj(z).
struct NumericPoint {
  std::complex<double> t = 0.0;
  std::vector<std::complex<double>> z;
  std::vector<std::complex<double>> zbar;
  double s = 1.0;
  double a = 1.0;
  std::complex<double> e = 1.0;

  /// Real point: t real, zbar = conj(z).
  static NumericPoint real(double t, std::vector<std::complex<double>> z);
};

/// Per-slot Laurent weights in (s, a, E) used for diagonal substitutions
/// x -> weight(x) * x. Unset slots carry the trivial weight.
using WeightTable = std::array<Monomial, kSlots>;

/// Exact coefficient: finite sum of GaussianRational * Monomial, kept in
/// canonical form (sorted by monomial, no zero coefficients).
class Coeff {
 public:
  explicit Coeff(int arity = 0);
  Coeff(int arity, const GaussianRational& c);

  static Coeff zero(int arity) { return Coeff(arity); }
  static Coeff one(int arity) { return Coeff(arity, 1); }
  static Coeff constant(int arity, const GaussianRational& c) { return Coeff(arity, c); }
  static Coeff var(int arity, Var v);
  static Coeff monomial(int arity, const Monomial& m, const GaussianRational& c = 1);
  /// Builds from unsorted terms; duplicates are merged.
  static Coeff from_terms(int arity, std::vector<Term> terms);

  int arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_unit() const;
  /// Degree in t, z, zbar (0 for zero).
  int degree() const;
  int max_index() const;
  bool has_exp_grade() const;
  /// Scalar value of a constant element (zero for the zero element).
  GaussianRational constant_value() const;
  /// Coefficient of the given monomial.
  GaussianRational coeff_of(const Monomial& m) const;

  Coeff conj() const;
  Coeff diff(Var v) const;
  /// Sum over terms of (E-exponent) * term.
  Coeff exp_weighted() const;
  Coeff substitute_weights(const WeightTable& w) const;
  Coeff pow(int k) const;
  /// Inverse of a unit (single term, degree 0); throws otherwise.
  Coeff unit_inverse() const;
  /// Exact division by a unit.
  Coeff divided_by_unit(const Coeff& unit) const;
  /// Replaces every occurrence of the given generator by zero.
  Coeff restrict_zero(Var v) const;

  std::complex<double> evaluate(const NumericPoint& p) const;
  /// Exact evaluation with one value per slot (Laurent slots must be nonzero).
  GaussianRational evaluate_exact(const std::array<GaussianRational, kSlots>& values) const;

  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  Coeff& operator*=(const Coeff& o);
  Coeff& operator*=(const GaussianRational& c);

  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  friend Coeff operator*(Coeff a, const GaussianRational& c) { return a *= c; }
  friend Coeff operator*(const GaussianRational& c, Coeff a) { return a *= c; }
  Coeff operator-() const;

  friend bool operator==(const Coeff& a, const Coeff& b);

  std::string to_string() const;

 private:
  void check_arity(const Coeff& o) const;
  void canonicalize();

  int arity_ = 0;
  std::vector<Term> terms_;
};

/// Polynomial substitution: positional generator k (t, z1..zn, zb1..zbn in
/// basis order) is replaced by images[k]; s, a, E are kept. The result has
/// the images' arity.
Coeff substitute(const Coeff& f, const std::vector<Coeff>& images);

/// Exponential grading context: E stands for exp(upsilon).
class ExpContext {
 public:
  ExpContext() = default;
  /// Throws Error(non_real) unless conj(upsilon) == upsilon, and
  /// Error(domain_error) if upsilon itself carries an E-grade.
  static ExpContext for_exponent(Coeff upsilon);

  bool active() const { return active_; }
  const Coeff& upsilon() const { return upsilon_; }

 private:
  Coeff upsilon_;
  bool active_ = false;
};

/// Total positional derivative: d/dv including the chain rule
/// d(E^e) = e E^e dupsilon under an active context.
Coeff partial(const Coeff& f, Var v, const ExpContext& ctx);

}  // namespace crgeom::algebra

#pragma once

#include <span>
#include <vector>

#include "crgeom/exterior/form.hpp"

namespace crgeom::exterior {

/// Derivation sum_k X^k d/dx^k over the basis (d_t, d_z1.., d_zb1..).
class VectorField {
 public:
  explicit VectorField(int arity);

  static VectorField basis(int arity, int k);

  int arity() const { return arity_; }
  int size() const { return static_cast<int>(comps_.size()); }
  const Coeff& operator[](int k) const { return comps_[static_cast<std::size_t>(k)]; }
  Coeff& operator[](int k) { return comps_[static_cast<std::size_t>(k)]; }

  bool is_zero() const;
  /// Type (1,0): every d_zb component vanishes (the d_t part is free).
  bool is_type_10() const;
  VectorField conj() const;

  /// X(f), with the exponential chain rule when ctx is active.
  Coeff apply(const Coeff& f, const ExpContext& ctx = {}) const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Coeff& f, const VectorField& x);

  friend bool operator==(const VectorField& a, const VectorField& b);

  std::string to_string() const;

 private:
  int arity_;
  std::vector<Coeff> comps_;
};

VectorField lie_bracket(const VectorField& x, const VectorField& y, const ExpContext& ctx = {});

/// Interior product i_X w (an antiderivation).
Form contract(const VectorField& x, const Form& w);

/// w(X_1, ..., X_k) with the determinant convention
/// (a ^ b)(X, Y) = a(X) b(Y) - a(Y) b(X).
Coeff evaluate(const Form& w, std::span<const VectorField> fields);
Coeff evaluate(const Form& w, const VectorField& x);
Coeff evaluate(const Form& w, const VectorField& x, const VectorField& y);

/// Cartan formula L_X = d i_X + i_X d.
Form lie_derivative(const VectorField& x, const Form& w, const ExpContext& ctx = {});

}  // namespace crgeom::exterior

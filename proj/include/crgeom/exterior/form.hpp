#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "crgeom/algebra/coeff.hpp"

namespace crgeom::exterior {

using algebra::Coeff;
using algebra::ExpContext;
using algebra::GaussianRational;

// Covector basis on R x C^n, in this fixed order:
//   0 -> dt, 1..n -> dz_1..dz_n, n+1..2n -> dzb_1..dzb_n.
inline int basis_size(int n) { return 2 * n + 1; }
algebra::Var coordinate(int n, int k);
std::string basis_name(int n, int k);
/// Index of the conjugate basis element (dt is real).
int conj_index(int n, int k);

/// Sign of dx^I ^ dx^J for disjoint sorted index sets given as bitmasks.
int wedge_sign(std::uint32_t a, std::uint32_t b);

/// Differential form of fixed degree; components keyed by bitmask of the
/// strictly increasing multi-index.
class Form {
 public:
  Form(int arity, int degree);

  static Form function(const Coeff& f);
  /// dx^k.
  static Form basis(int arity, int k);
  static Form zero(int arity, int degree) { return Form(arity, degree); }

  int arity() const { return arity_; }
  int degree() const { return degree_; }
  const std::map<std::uint32_t, Coeff>& components() const { return comps_; }

  Coeff component(std::uint32_t mask) const;
  /// Component along dx^{i1} ^ ... ^ dx^{ik}, with the permutation sign.
  Coeff component(std::initializer_list<int> indices) const;
  void add_term(std::uint32_t mask, const Coeff& c);

  bool is_zero() const { return comps_.empty(); }
  int max_coeff_degree() const;
  Form conj() const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  Form operator-() const;
  friend Form operator*(const Coeff& f, const Form& w);
  friend Form operator*(const GaussianRational& c, const Form& w);

  friend bool operator==(const Form& a, const Form& b);

  std::string to_string() const;

 private:
  void check(const Form& o) const;

  int arity_;
  int degree_;
  std::map<std::uint32_t, Coeff> comps_;
};

Form wedge(const Form& a, const Form& b);
/// k-fold wedge power.
Form wedge_power(const Form& a, int k);
/// Exterior derivative; E-graded coefficients follow d(E^e f) = E^e (df + e f dupsilon).
Form d(const Form& w, const ExpContext& ctx = {});

}  // namespace crgeom::exterior

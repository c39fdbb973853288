#pragma once

#include <vector>

#include "crgeom/exterior/form.hpp"

namespace crgeom::exterior {

/// Laurent weight s^s_exp * a^a_exp.
struct ScaleWeight {
  int s = 0;
  int a = 0;
  friend bool operator==(const ScaleWeight&, const ScaleWeight&) = default;
};

/// Weighted diagonal map t -> w_t t, z_j -> w_j z_j (zb_j gets the same
/// real weight).
class DiagonalAction {
 public:
  DiagonalAction(ScaleWeight t, std::vector<ScaleWeight> z);

  static DiagonalAction identity(int arity);

  int arity() const { return static_cast<int>(z_.size()); }
  ScaleWeight t_weight() const { return t_; }
  const std::vector<ScaleWeight>& z_weights() const { return z_; }
  /// Weight of basis coordinate k (0 -> t, then z, then zb).
  ScaleWeight weight(int k) const;
  Coeff weight_coeff(int k) const;
  algebra::WeightTable weight_table() const;

  /// Composition adds weight exponents.
  DiagonalAction compose(const DiagonalAction& o) const;

  friend bool operator==(const DiagonalAction&, const DiagonalAction&) = default;

 private:
  ScaleWeight t_;
  std::vector<ScaleWeight> z_;
};

Coeff pullback(const DiagonalAction& g, const Coeff& f);
Form pullback(const DiagonalAction& g, const Form& w);

}  // namespace crgeom::exterior

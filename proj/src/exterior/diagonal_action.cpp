#include "crgeom/exterior/diagonal_action.hpp"

#include <bit>

#include "crgeom/error.hpp"

namespace crgeom::exterior {

DiagonalAction::DiagonalAction(ScaleWeight t, std::vector<ScaleWeight> z) : t_(t), z_(std::move(z)) {
  if (z_.size() > static_cast<std::size_t>(algebra::kMaxArity)) {
    throw Error(Errc::dimension_mismatch, "too many coordinates for a diagonal action");
  }
}

DiagonalAction DiagonalAction::identity(int arity) {
  return DiagonalAction({}, std::vector<ScaleWeight>(static_cast<std::size_t>(arity)));
}

ScaleWeight DiagonalAction::weight(int k) const {
  if (k == 0) return t_;
  const int n = arity();
  return z_.at(static_cast<std::size_t>(k <= n ? k - 1 : k - n - 1));
}

Coeff DiagonalAction::weight_coeff(int k) const {
  const ScaleWeight w = weight(k);
  return Coeff::monomial(arity(), algebra::Monomial::of(algebra::Var::s(), w.s) *
                                      algebra::Monomial::of(algebra::Var::a(), w.a));
}

algebra::WeightTable DiagonalAction::weight_table() const {
  algebra::WeightTable table{};
  auto set = [&](int slot, ScaleWeight w) {
    table[slot].exp[algebra::kSlotS] = static_cast<std::int16_t>(w.s);
    table[slot].exp[algebra::kSlotA] = static_cast<std::int16_t>(w.a);
  };
  set(algebra::kSlotT, t_);
  for (int j = 0; j < arity(); ++j) {
    set(algebra::kSlotZ + j, z_[j]);
    set(algebra::kSlotZBar + j, z_[j]);
  }
  return table;
}

DiagonalAction DiagonalAction::compose(const DiagonalAction& o) const {
  if (o.arity() != arity()) throw Error(Errc::dimension_mismatch, "action arity mismatch");
  std::vector<ScaleWeight> z(z_.size());
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = {z_[j].s + o.z_[j].s, z_[j].a + o.z_[j].a};
  return DiagonalAction({t_.s + o.t_.s, t_.a + o.t_.a}, std::move(z));
}

Coeff pullback(const DiagonalAction& g, const Coeff& f) {
  if (f.arity() != g.arity()) throw Error(Errc::dimension_mismatch, "pullback arity mismatch");
  return f.substitute_weights(g.weight_table());
}

Form pullback(const DiagonalAction& g, const Form& w) {
  if (w.arity() != g.arity()) throw Error(Errc::dimension_mismatch, "pullback arity mismatch");
  const auto table = g.weight_table();
  Form r(w.arity(), w.degree());
  for (const auto& [mask, c] : w.components()) {
    Coeff v = c.substitute_weights(table);
    for (std::uint32_t m = mask; m; m &= m - 1) v *= g.weight_coeff(std::countr_zero(m));
    r.add_term(mask, v);
  }
  return r;
}

}  // namespace crgeom::exterior

#include "crgeom/exterior/vector_field.hpp"

#include <bit>

#include "crgeom/error.hpp"

namespace crgeom::exterior {

VectorField::VectorField(int arity) : arity_(arity), comps_(static_cast<std::size_t>(basis_size(arity)), Coeff(arity)) {}

VectorField VectorField::basis(int arity, int k) {
  VectorField x(arity);
  x[k] = Coeff::one(arity);
  return x;
}

bool VectorField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

bool VectorField::is_type_10() const {
  for (int k = arity_ + 1; k < size(); ++k)
    if (!comps_[static_cast<std::size_t>(k)].is_zero()) return false;
  return true;
}

VectorField VectorField::conj() const {
  VectorField r(arity_);
  for (int k = 0; k < size(); ++k) r[conj_index(arity_, k)] = (*this)[k].conj();
  return r;
}

Coeff VectorField::apply(const Coeff& f, const ExpContext& ctx) const {
  if (f.arity() != arity_) throw Error(Errc::dimension_mismatch, "vector field arity mismatch");
  Coeff r(arity_);
  for (int k = 0; k < size(); ++k) {
    const Coeff& xk = (*this)[k];
    if (xk.is_zero()) continue;
    Coeff df = algebra::partial(f, coordinate(arity_, k), ctx);
    if (!df.is_zero()) r += xk * df;
  }
  return r;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  if (o.arity_ != arity_) throw Error(Errc::dimension_mismatch, "vector field arity mismatch");
  for (int k = 0; k < size(); ++k) (*this)[k] += o[k];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  if (o.arity_ != arity_) throw Error(Errc::dimension_mismatch, "vector field arity mismatch");
  for (int k = 0; k < size(); ++k) (*this)[k] -= o[k];
  return *this;
}

VectorField operator*(const Coeff& f, const VectorField& x) {
  VectorField r(x.arity_);
  for (int k = 0; k < x.size(); ++k) r[k] = f * x[k];
  return r;
}

bool operator==(const VectorField& a, const VectorField& b) {
  if (a.arity_ != b.arity_) return false;
  for (int k = 0; k < a.size(); ++k)
    if (!(a[k] == b[k])) return false;
  return true;
}

std::string VectorField::to_string() const {
  std::string out;
  for (int k = 0; k < size(); ++k) {
    if ((*this)[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string name = basis_name(arity_, k).substr(1);
    out += "(" + (*this)[k].to_string() + ") d_" + name;
  }
  return out.empty() ? "0" : out;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y, const ExpContext& ctx) {
  if (x.arity() != y.arity()) throw Error(Errc::dimension_mismatch, "vector field arity mismatch");
  VectorField r(x.arity());
  for (int k = 0; k < x.size(); ++k) r[k] = x.apply(y[k], ctx) - y.apply(x[k], ctx);
  return r;
}

Form contract(const VectorField& x, const Form& w) {
  if (x.arity() != w.arity()) throw Error(Errc::dimension_mismatch, "contraction arity mismatch");
  if (w.degree() < 1) throw Error(Errc::domain_error, "contraction needs degree >= 1");
  Form r(w.arity(), w.degree() - 1);
  for (const auto& [mask, c] : w.components()) {
    int pos = 0;
    for (std::uint32_t m = mask; m; m &= m - 1, ++pos) {
      const int k = std::countr_zero(m);
      const Coeff& xk = x[k];
      if (xk.is_zero()) continue;
      Coeff v = xk * c;
      r.add_term(mask & ~(1u << k), (pos & 1) ? -v : v);
    }
  }
  return r;
}

Coeff evaluate(const Form& w, std::span<const VectorField> fields) {
  if (static_cast<int>(fields.size()) != w.degree()) {
    throw Error(Errc::dimension_mismatch, "evaluating a " + std::to_string(w.degree()) + "-form on " +
                                              std::to_string(fields.size()) + " fields");
  }
  Form cur = w;
  for (const auto& x : fields) cur = contract(x, cur);
  return cur.component(0u);
}

Coeff evaluate(const Form& w, const VectorField& x) {
  const VectorField f[] = {x};
  return evaluate(w, f);
}

Coeff evaluate(const Form& w, const VectorField& x, const VectorField& y) {
  const VectorField f[] = {x, y};
  return evaluate(w, f);
}

Form lie_derivative(const VectorField& x, const Form& w, const ExpContext& ctx) {
  if (w.degree() == 0) return Form::function(x.apply(w.component(0u), ctx));
  return d(contract(x, w), ctx) + contract(x, d(w, ctx));
}

}  // namespace crgeom::exterior

#include "crgeom/exterior/form.hpp"

#include <algorithm>
#include <bit>

#include "crgeom/error.hpp"

namespace crgeom::exterior {

algebra::Var coordinate(int n, int k) {
  if (k == 0) return algebra::Var::t();
  if (k <= n) return algebra::Var::z(k);
  return algebra::Var::zbar(k - n);
}

std::string basis_name(int n, int k) {
  if (k == 0) return "dt";
  if (k <= n) return "dz" + std::to_string(k);
  return "dzb" + std::to_string(k - n);
}

int conj_index(int n, int k) {
  if (k == 0) return 0;
  return k <= n ? k + n : k - n;
}

int wedge_sign(std::uint32_t a, std::uint32_t b) {
  // Count pairs (i in a, j in b) with i > j.
  int inversions = 0;
  while (b) {
    const int j = std::countr_zero(b);
    b &= b - 1;
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

Form::Form(int arity, int degree) : arity_(arity), degree_(degree) {
  if (degree < 0) throw Error(Errc::domain_error, "negative form degree");
}

Form Form::function(const Coeff& f) {
  Form w(f.arity(), 0);
  w.add_term(0, f);
  return w;
}

Form Form::basis(int arity, int k) {
  if (k < 0 || k >= basis_size(arity)) throw Error(Errc::dimension_mismatch, "basis index out of range");
  Form w(arity, 1);
  w.add_term(1u << k, Coeff::one(arity));
  return w;
}

Coeff Form::component(std::uint32_t mask) const {
  auto it = comps_.find(mask);
  return it == comps_.end() ? Coeff(arity_) : it->second;
}

Coeff Form::component(std::initializer_list<int> indices) const {
  std::vector<int> idx(indices);
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return Coeff(arity_);
      if (idx[i] > idx[j]) sign = -sign;
    }
  std::uint32_t mask = 0;
  for (int k : idx) mask |= 1u << k;
  Coeff c = component(mask);
  return sign < 0 ? -c : c;
}

void Form::add_term(std::uint32_t mask, const Coeff& c) {
  if (std::popcount(mask) != degree_) throw Error(Errc::dimension_mismatch, "component degree mismatch");
  if (c.arity() != arity_) throw Error(Errc::dimension_mismatch, "coefficient arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = comps_.try_emplace(mask, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

int Form::max_coeff_degree() const {
  int d = 0;
  for (const auto& [m, c] : comps_) d = std::max(d, c.degree());
  return d;
}

Form Form::conj() const {
  Form r(arity_, degree_);
  for (const auto& [mask, c] : comps_) {
    std::vector<int> mapped;
    for (std::uint32_t m = mask; m; m &= m - 1) mapped.push_back(conj_index(arity_, std::countr_zero(m)));
    int sign = 1;
    for (std::size_t i = 0; i < mapped.size(); ++i)
      for (std::size_t j = i + 1; j < mapped.size(); ++j)
        if (mapped[i] > mapped[j]) sign = -sign;
    std::uint32_t out = 0;
    for (int k : mapped) out |= 1u << k;
    Coeff cc = c.conj();
    r.add_term(out, sign < 0 ? -cc : cc);
  }
  return r;
}

void Form::check(const Form& o) const {
  if (arity_ != o.arity_) throw Error(Errc::dimension_mismatch, "form arity mismatch");
  if (degree_ != o.degree_) throw Error(Errc::dimension_mismatch, "form degree mismatch");
}

Form& Form::operator+=(const Form& o) {
  check(o);
  for (const auto& [m, c] : o.comps_) add_term(m, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  check(o);
  for (const auto& [m, c] : o.comps_) add_term(m, -c);
  return *this;
}

Form Form::operator-() const {
  Form r = *this;
  for (auto& [m, c] : r.comps_) c = -c;
  return r;
}

Form operator*(const Coeff& f, const Form& w) {
  Form r(w.arity_, w.degree_);
  if (f.is_zero()) return r;
  for (const auto& [m, c] : w.comps_) r.add_term(m, f * c);
  return r;
}

Form operator*(const GaussianRational& k, const Form& w) {
  Form r(w.arity_, w.degree_);
  if (k.is_zero()) return r;
  for (const auto& [m, c] : w.comps_) r.add_term(m, c * k);
  return r;
}

bool operator==(const Form& a, const Form& b) {
  if (a.arity_ != b.arity_ || a.degree_ != b.degree_ || a.comps_.size() != b.comps_.size()) return false;
  auto x = a.comps_.begin();
  for (auto y = b.comps_.begin(); y != b.comps_.end(); ++x, ++y) {
    if (x->first != y->first || !(x->second == y->second)) return false;
  }
  return true;
}

std::string Form::to_string() const {
  if (comps_.empty()) return "0";
  std::string out;
  for (const auto& [mask, c] : comps_) {
    if (!out.empty()) out += " + ";
    std::string idx;
    for (std::uint32_t m = mask; m; m &= m - 1) {
      if (!idx.empty()) idx += "^";
      idx += basis_name(arity_, std::countr_zero(m));
    }
    out += "(" + c.to_string() + ")";
    if (!idx.empty()) out += " " + idx;
  }
  return out;
}

Form wedge(const Form& a, const Form& b) {
  if (a.arity() != b.arity()) throw Error(Errc::dimension_mismatch, "form arity mismatch");
  Form r(a.arity(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.components()) {
    for (const auto& [mb, cb] : b.components()) {
      if (ma & mb) continue;
      Coeff c = ca * cb;
      r.add_term(ma | mb, wedge_sign(ma, mb) < 0 ? -c : c);
    }
  }
  return r;
}

Form wedge_power(const Form& a, int k) {
  Form r = Form::function(Coeff::one(a.arity()));
  for (int j = 0; j < k; ++j) r = wedge(r, a);
  return r;
}

Form d(const Form& w, const ExpContext& ctx) {
  const int n = w.arity();
  Form r(n, w.degree() + 1);
  for (const auto& [mask, c] : w.components()) {
    for (int k = 0; k < basis_size(n); ++k) {
      if (mask & (1u << k)) continue;
      Coeff dc = algebra::partial(c, coordinate(n, k), ctx);
      if (dc.is_zero()) continue;
      // dx^k moves past the indices of mask below k.
      const int before = std::popcount(mask & ((1u << k) - 1));
      r.add_term(mask | (1u << k), (before & 1) ? -dc : dc);
    }
  }
  return r;
}

}  // namespace crgeom::exterior

#include "crgeom/algebra/coeff.hpp"

#include <algorithm>
#include <cmath>

#include "crgeom/error.hpp"

namespace crgeom::algebra {

int Var::slot() const {
  switch (kind) {
    case VarKind::t: return kSlotT;
    case VarKind::z: return kSlotZ + index - 1;
    case VarKind::zbar: return kSlotZBar + index - 1;
    case VarKind::s: return kSlotS;
    case VarKind::a: return kSlotA;
    case VarKind::e: return kSlotE;
  }
  return kSlotT;
}

std::string Var::name() const {
  switch (kind) {
    case VarKind::t: return "t";
    case VarKind::z: return "z" + std::to_string(index);
    case VarKind::zbar: return "zb" + std::to_string(index);
    case VarKind::s: return "s";
    case VarKind::a: return "a";
    case VarKind::e: return "E";
  }
  return "?";
}

namespace {

Var slot_var(int slot) {
  if (slot == kSlotT) return Var::t();
  if (slot < kSlotZBar) return Var::z(slot - kSlotZ + 1);
  if (slot < kSlotS) return Var::zbar(slot - kSlotZBar + 1);
  if (slot == kSlotS) return Var::s();
  if (slot == kSlotA) return Var::a();
  return Var::e();
}

std::complex<double> ipow(std::complex<double> x, int k) {
  if (k == 0) return 1.0;
  if (k < 0) return 1.0 / ipow(x, -k);
  std::complex<double> r = 1.0;
  while (k > 0) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

}  // namespace

Monomial Monomial::of(Var v, int power) {
  Monomial m;
  m.exp[v.slot()] = static_cast<std::int16_t>(power);
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (int k = kSlotT; k < kSlotS; ++k) d += exp[k];
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; });
}

int Monomial::max_index() const {
  int m = 0;
  for (int j = 0; j < kMaxArity; ++j) {
    if (exp[kSlotZ + j] != 0 || exp[kSlotZBar + j] != 0) m = j + 1;
  }
  return m;
}

Monomial Monomial::conj() const {
  Monomial m = *this;
  for (int j = 0; j < kMaxArity; ++j) std::swap(m.exp[kSlotZ + j], m.exp[kSlotZBar + j]);
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (int k = 0; k < kSlots; ++k) m.exp[k] = static_cast<std::int16_t>(exp[k] + o.exp[k]);
  return m;
}

Monomial Monomial::inverse() const {
  Monomial m;
  for (int k = 0; k < kSlots; ++k) m.exp[k] = static_cast<std::int16_t>(-exp[k]);
  return m;
}

NumericPoint NumericPoint::real(double t, std::vector<std::complex<double>> z) {
  NumericPoint p;
  p.t = t;
  p.zbar.reserve(z.size());
  for (const auto& v : z) p.zbar.push_back(std::conj(v));
  p.z = std::move(z);
  return p;
}

Coeff::Coeff(int arity) : arity_(arity) {
  if (arity < 0 || arity > kMaxArity) throw Error(Errc::dimension_mismatch, "arity out of range");
}

Coeff::Coeff(int arity, const GaussianRational& c) : Coeff(arity) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

Coeff Coeff::var(int arity, Var v) { return monomial(arity, Monomial::of(v)); }

Coeff Coeff::monomial(int arity, const Monomial& m, const GaussianRational& c) {
  Coeff r(arity);
  if (m.max_index() > arity) throw Error(Errc::dimension_mismatch, "variable index exceeds arity");
  if (!c.is_zero()) r.terms_.push_back({m, c});
  return r;
}

Coeff Coeff::from_terms(int arity, std::vector<Term> terms) {
  Coeff r(arity);
  r.terms_ = std::move(terms);
  r.canonicalize();
  for (const auto& t : r.terms_) {
    if (t.mono.max_index() > arity) throw Error(Errc::dimension_mismatch, "variable index exceeds arity");
  }
  return r;
}

void Coeff::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  terms_ = std::move(out);
}

void Coeff::check_arity(const Coeff& o) const {
  if (arity_ != o.arity_) {
    throw Error(Errc::dimension_mismatch, "coefficient arity mismatch: " + std::to_string(arity_) + " vs " +
                                              std::to_string(o.arity_));
  }
}

bool Coeff::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

bool Coeff::is_unit() const { return terms_.size() == 1 && terms_[0].mono.is_unit(); }

int Coeff::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

int Coeff::max_index() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.mono.max_index());
  return m;
}

bool Coeff::has_exp_grade() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono.exp[kSlotE] != 0; });
}

GaussianRational Coeff::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw Error(Errc::domain_error, "element is not constant: " + to_string());
  return terms_[0].coeff;
}

GaussianRational Coeff::coeff_of(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.mono < key; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

Coeff Coeff::conj() const {
  Coeff r(arity_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono.conj(), t.coeff.conj()});
  r.canonicalize();
  return r;
}

Coeff Coeff::diff(Var v) const {
  if (!v.is_positional()) {
    throw Error(Errc::domain_error, "s, a and E are formal constants for positional derivatives");
  }
  if (v.kind != VarKind::t && (v.index < 1 || v.index > arity_)) {
    throw Error(Errc::dimension_mismatch, "derivative variable outside arity");
  }
  const int slot = v.slot();
  Coeff r(arity_);
  for (const auto& t : terms_) {
    const int e = t.mono.exp[slot];
    if (e == 0) continue;
    Term d{t.mono, t.coeff * GaussianRational(e)};
    d.mono.exp[slot] = static_cast<std::int16_t>(e - 1);
    r.terms_.push_back(std::move(d));
  }
  // Lowering one exponent keeps the lexicographic order among survivors
  // only per fixed prefix, so re-sort.
  r.canonicalize();
  return r;
}

Coeff Coeff::exp_weighted() const {
  Coeff r(arity_);
  for (const auto& t : terms_) {
    const int e = t.mono.exp[kSlotE];
    if (e != 0) r.terms_.push_back({t.mono, t.coeff * GaussianRational(e)});
  }
  return r;  // already sorted
}

Coeff Coeff::substitute_weights(const WeightTable& w) const {
  Coeff r(arity_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    for (int k = kSlotT; k < kSlotS; ++k) {
      const int e = t.mono.exp[k];
      if (e == 0) continue;
      for (int g = kSlotS; g < kSlots; ++g) m.exp[g] = static_cast<std::int16_t>(m.exp[g] + e * w[k].exp[g]);
    }
    r.terms_.push_back({m, t.coeff});
  }
  r.canonicalize();
  return r;
}

Coeff Coeff::pow(int k) const {
  if (k < 0) return unit_inverse().pow(-k);
  Coeff result = Coeff::one(arity_);
  Coeff base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Coeff Coeff::unit_inverse() const {
  if (!is_unit()) throw Error(Errc::division_by_zero, "element is not invertible: " + to_string());
  return monomial(arity_, terms_[0].mono.inverse(), terms_[0].coeff.inv());
}

Coeff Coeff::divided_by_unit(const Coeff& unit) const { return *this * unit.unit_inverse(); }

Coeff substitute(const Coeff& f, const std::vector<Coeff>& images) {
  const int n = f.arity();
  if (static_cast<int>(images.size()) != 2 * n + 1) throw Error(Errc::dimension_mismatch, "substitution needs 2n+1 images");
  const int target = images[0].arity();
  for (const auto& im : images)
    if (im.arity() != target) throw Error(Errc::dimension_mismatch, "substitution images differ in arity");
  auto slot_of = [&](int k) { return k == 0 ? kSlotT : (k <= n ? kSlotZ + k - 1 : kSlotZBar + k - n - 1); };
  std::vector<std::vector<Coeff>> powers(images.size());
  auto power = [&](int k, int e) -> const Coeff& {
    auto& cache = powers[static_cast<std::size_t>(k)];
    if (cache.empty()) cache.push_back(Coeff::one(target));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[static_cast<std::size_t>(k)]);
    return cache[static_cast<std::size_t>(e)];
  };
  Coeff out(target);
  for (const auto& term : f.terms()) {
    Monomial laurent;
    laurent.exp[kSlotS] = term.mono.exp[kSlotS];
    laurent.exp[kSlotA] = term.mono.exp[kSlotA];
    laurent.exp[kSlotE] = term.mono.exp[kSlotE];
    Coeff v = Coeff::monomial(target, laurent, term.coeff);
    for (int k = 0; k < 2 * n + 1 && !v.is_zero(); ++k) {
      const int e = term.mono.exp[slot_of(k)];
      if (e) v *= power(k, e);
    }
    out += v;
  }
  return out;
}

Coeff Coeff::restrict_zero(Var v) const {
  const int slot = v.slot();
  Coeff r(arity_);
  for (const auto& t : terms_) {
    if (t.mono.exp[slot] == 0) r.terms_.push_back(t);
  }
  return r;
}

std::complex<double> Coeff::evaluate(const NumericPoint& p) const {
  std::complex<double> sum = 0.0;
  for (const auto& term : terms_) {
    std::complex<double> v = term.coeff.to_complex();
    const auto& e = term.mono.exp;
    if (e[kSlotT]) v *= ipow(p.t, e[kSlotT]);
    for (int j = 0; j < arity_; ++j) {
      if (e[kSlotZ + j]) v *= ipow(p.z.at(j), e[kSlotZ + j]);
      if (e[kSlotZBar + j]) v *= ipow(p.zbar.at(j), e[kSlotZBar + j]);
    }
    if (e[kSlotS]) v *= std::pow(p.s, e[kSlotS]);
    if (e[kSlotA]) v *= std::pow(p.a, e[kSlotA]);
    if (e[kSlotE]) v *= ipow(p.e, e[kSlotE]);
    sum += v;
  }
  return sum;
}

GaussianRational Coeff::evaluate_exact(const std::array<GaussianRational, kSlots>& values) const {
  GaussianRational sum;
  for (const auto& term : terms_) {
    GaussianRational v = term.coeff;
    for (int k = 0; k < kSlots; ++k) {
      int e = term.mono.exp[k];
      if (e == 0) continue;
      GaussianRational b = e > 0 ? values[k] : values[k].inv();
      for (int r = 0; r < std::abs(e); ++r) v *= b;
    }
    sum += v;
  }
  return sum;
}

Coeff& Coeff::operator+=(const Coeff& o) {
  check_arity(o);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->mono < b->mono)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->mono < a->mono) {
      out.push_back(*b++);
    } else {
      GaussianRational c = a->coeff + b->coeff;
      if (!c.is_zero()) out.push_back({a->mono, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) { return *this += -o; }

Coeff operator*(const Coeff& a, const Coeff& b) {
  a.check_arity(b);
  Coeff r(a.arity_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) r.terms_.push_back({x.mono * y.mono, x.coeff * y.coeff});
  }
  r.canonicalize();
  return r;
}

Coeff& Coeff::operator*=(const Coeff& o) {
  *this = *this * o;
  return *this;
}

Coeff& Coeff::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Coeff Coeff::operator-() const {
  Coeff r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

bool operator==(const Coeff& a, const Coeff& b) {
  a.check_arity(b);
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].mono != b.terms_[k].mono || !(a.terms_[k].coeff == b.terms_[k].coeff)) return false;
  }
  return true;
}

namespace {

std::string monomial_string(const Monomial& m) {
  std::string out;
  for (int k = 0; k < kSlots; ++k) {
    const int e = m.exp[k];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += slot_var(k).name();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

// A coefficient reads as "negative" when it is a negative real or a
// negative imaginary; those print with a leading minus.
bool reads_negative(const GaussianRational& c) {
  if (c.is_real()) return sgn(c.re()) < 0;
  return sgn(c.re()) == 0 && sgn(c.im()) < 0;
}

std::string term_body(const GaussianRational& c, const Monomial& m) {
  const std::string mono = monomial_string(m);
  if (mono.empty()) return c.to_string();
  if (c.is_one()) return mono;
  return c.to_string() + "*" + mono;
}

}  // namespace

std::string Coeff::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = reads_negative(t.coeff);
    const std::string body = term_body(neg ? -t.coeff : t.coeff, t.mono);
    if (first) {
      out = neg ? "-" + body : body;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

ExpContext ExpContext::for_exponent(Coeff upsilon) {
  if (upsilon.has_exp_grade()) throw Error(Errc::domain_error, "exponent function must carry exp-grade 0");
  if (!(upsilon.conj() == upsilon)) throw Error(Errc::non_real, "exponent function must be real");
  ExpContext ctx;
  ctx.upsilon_ = std::move(upsilon);
  ctx.active_ = true;
  return ctx;
}

Coeff partial(const Coeff& f, Var v, const ExpContext& ctx) {
  Coeff d = f.diff(v);
  if (!f.has_exp_grade()) return d;
  if (!ctx.active()) throw Error(Errc::domain_error, "exp-graded element without an active exponential context");
  return d + f.exp_weighted() * ctx.upsilon().diff(v);
}

}  // namespace crgeom::algebra

#include "crgeom/geodesics/rational_map.hpp"

#include <cctype>

#include "crgeom/error.hpp"

namespace crgeom::geodesics {

Poly::Poly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const GaussianRational& c) { return Poly({c}); }
Poly Poly::z() { return Poly({0, 1}); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::derivative() const {
  std::vector<GaussianRational> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * GaussianRational(static_cast<long>(k)));
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  const GaussianRational inv = lead().inv();
  std::vector<GaussianRational> d = c_;
  for (auto& x : d) x *= inv;
  return Poly(std::move(d));
}

GaussianRational Poly::evaluate(const GaussianRational& x) const {
  GaussianRational v;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

std::complex<double> Poly::evaluate(std::complex<double> x) const {
  std::complex<double> v = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + it->to_complex();
  return v;
}

Poly Poly::compose(const Poly& q) const {
  Poly v;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * q + Poly::constant(*it);
  return v;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussianRational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const GaussianRational& c = c_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string mono = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
    const bool neg = sgn(c.re()) < 0 || (sgn(c.re()) == 0 && sgn(c.im()) < 0);
    const std::string cs = (neg ? -c : c).to_string();
    std::string piece;
    if (mono.empty()) piece = cs;
    else if (cs == "1") piece = mono;
    else piece = cs + "*" + mono;
    if (out.empty()) out = neg ? "-" + piece : piece;
    else out += (neg ? " - " : " + ") + piece;
  }
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(Errc::division_by_zero, "polynomial division by zero");
  std::vector<GaussianRational> q(static_cast<std::size_t>(std::max(0, a.degree() - b.degree() + 1)));
  Poly r = a;
  const GaussianRational inv = b.lead().inv();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    const GaussianRational f = r.lead() * inv;
    q[static_cast<std::size_t>(shift)] += f;
    std::vector<GaussianRational> sub(static_cast<std::size_t>(shift), GaussianRational());
    for (const auto& c : b.coeffs()) sub.push_back(c * f);
    r = r - Poly(std::move(sub));
  }
  return {Poly(std::move(q)), r};
}

Poly gcd(Poly a, Poly b) {
  // Monic remainders keep the rational coefficients from growing.
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

RationalMap::RationalMap(Poly num, Poly den) {
  if (den.is_zero()) throw Error(Errc::division_by_zero, "rational map with zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly::constant(1);
    return;
  }
  const Poly g = gcd(num, den);
  num = divmod(num, g).first;
  den = divmod(den, g).first;
  const GaussianRational inv = den.lead().inv();
  num_ = num * Poly::constant(inv);
  den_ = den * Poly::constant(inv);
}

RationalMap RationalMap::mobius(const GaussianRational& a, const GaussianRational& b, const GaussianRational& c,
                                const GaussianRational& d) {
  if ((a * d - b * c).is_zero()) throw Error(Errc::precondition, "Mobius map with ad - bc = 0");
  return RationalMap(Poly({b, a}), Poly({d, c}));
}

RationalMap RationalMap::derivative() const {
  return RationalMap(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalMap RationalMap::compose(const RationalMap& w) const {
  // num(a/b)/den(a/b) with w = a/b, both homogenized by b^d, d = max degree.
  const int d = std::max(num_.degree(), den_.degree());
  std::vector<Poly> apow{Poly::constant(1)}, bpow{Poly::constant(1)};
  for (int k = 1; k <= d; ++k) {
    apow.push_back(apow.back() * w.num_);
    bpow.push_back(bpow.back() * w.den_);
  }
  auto homogenize = [&](const Poly& p) {
    Poly out;
    for (int k = 0; k <= p.degree(); ++k) {
      const GaussianRational& c = p.coeffs()[static_cast<std::size_t>(k)];
      if (!c.is_zero()) out = out + Poly::constant(c) * apow[static_cast<std::size_t>(k)] * bpow[static_cast<std::size_t>(d - k)];
    }
    return out;
  };
  return RationalMap(homogenize(num_), homogenize(den_));
}

std::complex<double> RationalMap::evaluate(std::complex<double> z) const { return num_.evaluate(z) / den_.evaluate(z); }

RationalMap operator+(const RationalMap& a, const RationalMap& b) {
  return RationalMap(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RationalMap operator-(const RationalMap& a, const RationalMap& b) {
  return RationalMap(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
RationalMap operator*(const RationalMap& a, const RationalMap& b) {
  return RationalMap(a.num_ * b.num_, a.den_ * b.den_);
}
RationalMap operator/(const RationalMap& a, const RationalMap& b) {
  if (b.is_zero()) throw Error(Errc::division_by_zero, "division by the zero map");
  return RationalMap(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalMap::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

class MapParser {
 public:
  explicit MapParser(std::string_view s) : s_(s) {}

  RationalMap parse() {
    RationalMap v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos_, msg); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RationalMap expr() {
    bool neg = eat('-');
    if (!neg) eat('+');
    RationalMap v = term();
    if (neg) v = RationalMap::constant(-1) * v;
    for (;;) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }
  RationalMap term() {
    RationalMap v = factor();
    for (;;) {
      if (eat('*')) {
        v = v * factor();
      } else if (eat('/')) {
        const std::size_t at = pos_;
        RationalMap d = factor();
        if (d.is_zero()) throw ParseError(at, "division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }
  RationalMap factor() {
    RationalMap b = base();
    if (eat('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      RationalMap r = RationalMap::constant(1);
      for (int k = 0; k < e; ++k) r = r * b;
      return r;
    }
    return b;
  }
  RationalMap base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalMap v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 'z') {
      ++pos_;
      return RationalMap::z();
    }
    if (c == 'i') {
      ++pos_;
      return RationalMap::constant(GaussianRational::i());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalMap::constant(GaussianRational(mpq_class(std::string(s_.substr(start, pos_ - start)))));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalMap parse_rational_map(std::string_view text) { return MapParser(text).parse(); }

}  // namespace crgeom::geodesics

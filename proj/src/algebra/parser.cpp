#include "crgeom/algebra/parser.hpp"

#include <cctype>
#include <vector>

#include "crgeom/error.hpp"

namespace crgeom::algebra {
namespace {

enum class Tok { number, ident, imag, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < s.size()) {
    const char c = s[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
      continue;
    }
    const std::size_t start = k;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      out.push_back({Tok::number, start, std::string(s.substr(start, k - start))});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (k < s.size() && std::isalnum(static_cast<unsigned char>(s[k]))) ++k;
      std::string word(s.substr(start, k - start));
      out.push_back({word == "i" ? Tok::imag : Tok::ident, start, word});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      default: throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, start, std::string(1, c)});
    ++k;
  }
  out.push_back({Tok::end, s.size(), ""});
  return out;
}

std::optional<Var> ident_var(const std::string& w) {
  if (w == "t") return Var::t();
  if (w == "s") return Var::s();
  if (w == "a") return Var::a();
  if (w == "E") return Var::e();
  auto digit = [](const std::string& rest) -> int {
    if (rest.size() != 1 || !std::isdigit(static_cast<unsigned char>(rest[0])) || rest[0] == '0') return 0;
    return rest[0] - '0';
  };
  if (w.size() >= 3 && w.compare(0, 2, "zb") == 0) {
    if (int j = digit(w.substr(2))) return Var::zbar(j);
    return std::nullopt;
  }
  if (w.size() >= 2 && w[0] == 'z') {
    if (int j = digit(w.substr(1))) return Var::z(j);
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, int arity) : toks_(std::move(toks)), arity_(arity) {}

  Coeff parse() {
    Coeff e = expr();
    if (peek().kind != Tok::end) throw ParseError(peek().offset, "unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  Coeff expr() {
    bool negate = false;
    if (peek().kind == Tok::plus || peek().kind == Tok::minus) negate = take().kind == Tok::minus;
    Coeff acc = term();
    if (negate) acc = -acc;
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool minus = take().kind == Tok::minus;
      Coeff rhs = term();
      if (minus) acc -= rhs;
      else acc += rhs;
    }
    return acc;
  }

  Coeff term() {
    Coeff acc = factor();
    while (peek().kind == Tok::star) {
      take();
      acc *= factor();
    }
    return acc;
  }

  Coeff factor() {
    const std::size_t at = peek().offset;
    Coeff b = base();
    if (peek().kind != Tok::caret) return b;
    take();
    bool neg = false;
    if (peek().kind == Tok::minus) {
      take();
      neg = true;
    }
    const Token& num = take();
    if (num.kind != Tok::number) throw ParseError(num.offset, "expected integer exponent");
    if (num.text.size() > 4) throw ParseError(num.offset, "exponent too large");
    const int k = std::stoi(num.text);
    if (neg && !b.is_unit()) throw ParseError(at, "negative power of a non-invertible element");
    return b.pow(neg ? -k : k);
  }

  Coeff base() {
    const Token& tok = take();
    switch (tok.kind) {
      case Tok::number: {
        mpz_class num(tok.text);
        mpz_class den(1);
        if (peek().kind == Tok::slash) {
          take();
          const Token& d = take();
          if (d.kind != Tok::number) throw ParseError(d.offset, "expected positive integer denominator");
          den = mpz_class(d.text);
          if (den == 0) throw ParseError(d.offset, "zero denominator");
        }
        mpq_class q(num, den);
        q.canonicalize();
        return Coeff::constant(arity_, GaussianRational(q));
      }
      case Tok::imag:
        return Coeff::constant(arity_, GaussianRational::i());
      case Tok::ident: {
        auto v = ident_var(tok.text);
        if (!v) throw ParseError(tok.offset, "unknown variable '" + tok.text + "'");
        if ((v->kind == VarKind::z || v->kind == VarKind::zbar) && v->index > arity_) {
          throw ParseError(tok.offset, "variable '" + tok.text + "' exceeds arity " + std::to_string(arity_));
        }
        return Coeff::var(arity_, *v);
      }
      case Tok::lparen: {
        Coeff e = expr();
        const Token& close = take();
        if (close.kind != Tok::rparen) throw ParseError(close.offset, "expected ')'");
        return e;
      }
      case Tok::end:
        throw ParseError(tok.offset, "unexpected end of input");
      default:
        throw ParseError(tok.offset, "unexpected '" + tok.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int arity_;
};

}  // namespace

Coeff parse_expr(std::string_view text, std::optional<int> arity) {
  auto toks = lex(text);
  int n = 0;
  if (arity) {
    n = *arity;
    if (n < 0 || n > kMaxArity) throw Error(Errc::dimension_mismatch, "arity out of range");
  } else {
    for (const auto& t : toks) {
      if (t.kind != Tok::ident) continue;
      if (auto v = ident_var(t.text); v && (v->kind == VarKind::z || v->kind == VarKind::zbar)) {
        n = std::max(n, v->index);
      }
    }
  }
  return Parser(std::move(toks), n).parse();
}

}  // namespace crgeom::algebra

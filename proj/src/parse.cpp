#include "jetcurv/parse.hpp"

#include <cctype>
#include <optional>

namespace jetcurv {

namespace {

struct Scanner {
  std::string_view s;
  std::size_t i = 0;
  const SymbolTable& symbols;

  explicit Scanner(std::string_view text, const SymbolTable& tab)
      : s(text), symbols(tab) {}

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  char peek() {
    ws();
    return i < s.size() ? s[i] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i + 1); }

  Expr expr() {
    Expr r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }

  Expr term() {
    Expr r = factor();
    for (;;) {
      if (eat('*'))
        r = r * factor();
      else if (eat('/'))
        r = r / factor();
      else
        return r;
    }
  }

  Expr factor() {
    if (eat('-')) return -factor();
    return power();
  }

  Expr power() {
    Expr p = primary();
    if (eat('^')) return powi(p, exponent());
    return p;
  }

  // Exponents are signed integer literals; a ^ inside an exponent folds
  // right-associatively on the literals themselves (x^2^3 is x^8).
  long long exponent() {
    ws();
    bool neg = eat('-');
    std::optional<long long> digits = integer_literal();
    if (!digits) fail("expected an integer exponent");
    long long v = *digits;
    if (eat('^')) {
      long long up = exponent();
      if (up < 0) fail("negative exponent inside an exponent tower");
      long long r = 1;
      for (long long k = 0; k < up; ++k) {
        if (__builtin_mul_overflow(r, v, &r)) fail("exponent too large");
      }
      v = r;
    }
    return neg ? -v : v;
  }

  std::optional<long long> integer_literal() {
    ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    long long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      int d = s[i] - '0';
      if (__builtin_mul_overflow(v, 10ll, &v) || __builtin_add_overflow(v, (long long)d, &v))
        fail("integer literal too large");
      ++i;
    }
    return v;
  }

  Expr primary() {
    ws();
    if (i >= s.size()) fail("unexpected end of input");
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // big literals are fine: accumulate exactly
      BigInt v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        ++i;
      }
      return make_num(Rational(v));
    }
    if (c == '(') {
      ++i;
      Expr inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      ++i;
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      std::string_view name = s.substr(start, i - start);
      if (peek() == '(') {
        Fn f;
        if (name == "sin")
          f = Fn::Sin;
        else if (name == "cos")
          f = Fn::Cos;
        else if (name == "exp")
          f = Fn::Exp;
        else if (name == "ln")
          f = Fn::Ln;
        else if (name == "sqrt")
          f = Fn::Sqrt;
        else
          throw ParseError("unknown function '" + std::string(name) + "'", start + 1);
        eat('(');
        Expr a = expr();
        if (!eat(')')) fail("expected ')'");
        return apply_fn(f, a);
      }
      SymbolId id = symbols.lookup(name);
      if (id < 0)
        throw ParseError("unknown symbol '" + std::string(name) + "'", start + 1);
      return make_sym(id, symbols.name(id));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Expr parse(std::string_view text, const SymbolTable& symbols) {
  Scanner sc(text, symbols);
  Expr e = sc.expr();
  sc.ws();
  if (sc.i != sc.s.size()) sc.fail("trailing input");
  return e;
}

}  // namespace jetcurv

#include "jetcurv/expr.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

namespace jetcurv {

namespace detail {
struct Node {
  Kind kind = Kind::Num;
  Fn fn = Fn::Sin;          // Fun
  long long exp = 0;        // Pow
  SymbolId sym = -1;        // Sym
  Rational num;             // Num
  std::string name;         // Sym
  std::vector<Expr> kids;   // Sum/Prod terms, Pow base at [0], Fun arg at [0]
  std::size_t hash = 0;
};
}  // namespace detail

using detail::Node;

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Exp: return "exp";
    case Fn::Ln: return "ln";
    case Fn::Sqrt: return "sqrt";
  }
  return "?";
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

std::size_t hash_node(const Node& n) {
  auto h = static_cast<std::size_t>(n.kind) * 1099511628211ull;
  switch (n.kind) {
    case Kind::Num:
      // Collisions only cost a full compare, so hashing through double is fine.
      h = mix(h, std::hash<double>{}(n.num.template convert_to<double>()));
      break;
    case Kind::Sym:
      h = mix(h, static_cast<std::size_t>(n.sym));
      break;
    case Kind::Fun:
      h = mix(h, static_cast<std::size_t>(n.fn));
      h = mix(h, n.kids[0].hash());
      break;
    case Kind::Pow:
      h = mix(h, n.kids[0].hash());
      h = mix(h, static_cast<std::size_t>(n.exp));
      break;
    case Kind::Prod:
    case Kind::Sum:
      for (const Expr& k : n.kids) h = mix(h, k.hash());
      h = mix(h, n.kids.size() + static_cast<std::size_t>(n.kind));
      break;
  }
  return h;
}

long long checked_mul(long long a, long long b) {
  long long r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw DomainError("integer exponent overflow", std::to_string(a) + "*" + std::to_string(b));
  return r;
}

}  // namespace

Expr make_raw(Node&& n) {
  n.hash = hash_node(n);
  return Expr(std::make_shared<const Node>(std::move(n)));
}

namespace {

const Expr& zero_expr() {
  static const Expr z = [] {
    Node n;
    n.kind = Kind::Num;
    n.num = 0;
    return make_raw(std::move(n));
  }();
  return z;
}

const Expr& one_expr() {
  static const Expr o = [] {
    Node n;
    n.kind = Kind::Num;
    n.num = 1;
    return make_raw(std::move(n));
  }();
  return o;
}

}  // namespace

Expr::Expr() : p_(nullptr) { *this = zero_expr(); }

Kind Expr::kind() const { return p_->kind; }
std::size_t Expr::hash() const { return p_->hash; }
const Rational& Expr::num() const { assert(kind() == Kind::Num); return p_->num; }
SymbolId Expr::sym() const { assert(kind() == Kind::Sym); return p_->sym; }
const std::string& Expr::sym_name() const { assert(kind() == Kind::Sym); return p_->name; }
Fn Expr::fn() const { assert(kind() == Kind::Fun); return p_->fn; }
const Expr& Expr::arg() const { assert(kind() == Kind::Fun); return p_->kids[0]; }
const Expr& Expr::base() const { assert(kind() == Kind::Pow); return p_->kids[0]; }
long long Expr::exponent() const { assert(kind() == Kind::Pow); return p_->exp; }
const std::vector<Expr>& Expr::kids() const { return p_->kids; }
bool Expr::is_zero_literal() const { return kind() == Kind::Num && p_->num == 0; }
bool Expr::is_one_literal() const { return kind() == Kind::Num && p_->num == 1; }

Rational rational_pow(const Rational& q, long long k) {
  if (k == 0) return Rational(1);
  if (q == 0) {
    if (k < 0) throw DomainError("division by zero", "0");
    return Rational(0);
  }
  unsigned long long n = k < 0 ? 0ull - static_cast<unsigned long long>(k)
                               : static_cast<unsigned long long>(k);
  if (n > 1000000ull)
    throw DomainError("integer exponent overflow", std::to_string(k));
  BigInt bn = boost::multiprecision::pow(numerator(q), static_cast<unsigned>(n));
  BigInt bd = boost::multiprecision::pow(denominator(q), static_cast<unsigned>(n));
  if (k < 0) std::swap(bn, bd);
  // cpp_rational rejects negative denominators outright instead of
  // normalising them, so move the sign up front ourselves.
  if (bd < 0) { bn = -bn; bd = -bd; }
  return Rational(bn, bd);
}

namespace {

int kind_rank(Kind k) {
  switch (k) {
    case Kind::Num: return 0;
    case Kind::Sym: return 1;
    case Kind::Fun: return 2;
    case Kind::Pow: return 3;
    case Kind::Prod: return 4;
    case Kind::Sum: return 5;
  }
  return 6;
}

}  // namespace

int compare(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return 0;
  int ra = kind_rank(a.kind()), rb = kind_rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case Kind::Num:
      if (a.num() == b.num()) return 0;
      return a.num() < b.num() ? -1 : 1;
    case Kind::Sym:
      if (a.sym() == b.sym()) return 0;
      return a.sym() < b.sym() ? -1 : 1;
    case Kind::Fun: {
      if (a.fn() != b.fn()) return a.fn() < b.fn() ? -1 : 1;
      return compare(a.arg(), b.arg());
    }
    case Kind::Pow: {
      int c = compare(a.base(), b.base());
      if (c) return c;
      if (a.exponent() == b.exponent()) return 0;
      return a.exponent() < b.exponent() ? -1 : 1;
    }
    case Kind::Prod:
    case Kind::Sum: {
      const auto& ka = a.kids();
      const auto& kb = b.kids();
      std::size_t nm = std::min(ka.size(), kb.size());
      for (std::size_t i = 0; i < nm; ++i) {
        int c = compare(ka[i], kb[i]);
        if (c) return c;
      }
      if (ka.size() == kb.size()) return 0;
      return ka.size() < kb.size() ? -1 : 1;
    }
  }
  return 0;
}

bool equal(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

Expr make_num(Rational q) {
  if (q == 0) return zero_expr();
  if (q == 1) return one_expr();
  Node n;
  n.kind = Kind::Num;
  n.num = std::move(q);
  return make_raw(std::move(n));
}

Expr make_num(long long v) { return make_num(Rational(v)); }

Expr make_num(long long num, long long den) {
  if (den == 0) throw DomainError("division by zero", std::to_string(num) + "/0");
  if (den < 0) { num = -num; den = -den; }
  return make_num(Rational(BigInt(num), BigInt(den)));
}

Expr make_sym(SymbolId id, std::string name) {
  Node n;
  n.kind = Kind::Sym;
  n.sym = id;
  n.name = std::move(name);
  return make_raw(std::move(n));
}

namespace {

// A monomial is a rational coefficient times base^exponent factors sorted by
// base. Every canonical non-Sum expression is one; canonical Sums are lists
// of them with distinct factor parts.
struct Monomial {
  Rational coeff;
  std::vector<std::pair<Expr, long long>> factors;
};

Monomial to_monomial(const Expr& e) {
  switch (e.kind()) {
    case Kind::Num:
      return {e.num(), {}};
    case Kind::Prod: {
      Monomial m;
      m.coeff = 1;
      for (const Expr& k : e.kids()) {
        if (k.kind() == Kind::Num)
          m.coeff *= k.num();
        else if (k.kind() == Kind::Pow)
          m.factors.emplace_back(k.base(), k.exponent());
        else
          m.factors.emplace_back(k, 1);
      }
      return m;
    }
    case Kind::Pow:
      return {Rational(1), {{e.base(), e.exponent()}}};
    default:
      return {Rational(1), {{e, 1}}};
  }
}

bool factors_equal(const std::vector<std::pair<Expr, long long>>& a,
                   const std::vector<std::pair<Expr, long long>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].second != b[i].second || !equal(a[i].first, b[i].first)) return false;
  return true;
}

bool factors_less(const std::vector<std::pair<Expr, long long>>& a,
                  const std::vector<std::pair<Expr, long long>>& b) {
  std::size_t nm = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < nm; ++i) {
    int c = compare(a[i].first, b[i].first);
    if (c) return c < 0;
    if (a[i].second != b[i].second) return a[i].second < b[i].second;
  }
  return a.size() < b.size();
}

Expr from_monomial(Monomial m) {
  if (m.coeff == 0) return zero_expr();
  if (m.factors.empty()) return make_num(std::move(m.coeff));
  std::vector<Expr> kids;
  kids.reserve(m.factors.size() + 1);
  if (m.coeff != 1) kids.push_back(make_num(m.coeff));
  for (auto& [base, e] : m.factors) {
    assert(e != 0);
    if (e == 1) {
      kids.push_back(base);
    } else {
      Node p;
      p.kind = Kind::Pow;
      p.exp = e;
      p.kids.push_back(base);
      kids.push_back(make_raw(std::move(p)));
    }
  }
  if (kids.size() == 1) return kids[0];
  Node n;
  n.kind = Kind::Prod;
  n.kids = std::move(kids);
  return make_raw(std::move(n));
}

// Sorts by base and merges duplicates; exponents that cancel drop out.
void normalize_factors(std::vector<std::pair<Expr, long long>>& fs) {
  std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) {
    return compare(a.first, b.first) < 0;
  });
  std::vector<std::pair<Expr, long long>> out;
  for (auto& f : fs) {
    if (!out.empty() && equal(out.back().first, f.first))
      out.back().second += f.second;
    else
      out.push_back(f);
  }
  std::erase_if(out, [](const auto& f) { return f.second == 0; });
  fs = std::move(out);
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.coeff = a.coeff * b.coeff;
  if (r.coeff == 0) return r;
  // both factor lists are sorted, so merge them
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    int c = compare(a.factors[i].first, b.factors[j].first);
    if (c < 0) {
      r.factors.push_back(a.factors[i++]);
    } else if (c > 0) {
      r.factors.push_back(b.factors[j++]);
    } else {
      long long e = a.factors[i].second + b.factors[j].second;
      if (e != 0) r.factors.emplace_back(a.factors[i].first, e);
      ++i;
      ++j;
    }
  }
  for (; i < a.factors.size(); ++i) r.factors.push_back(a.factors[i]);
  for (; j < b.factors.size(); ++j) r.factors.push_back(b.factors[j]);
  return r;
}

}  // namespace

Expr add(std::vector<Expr> terms) {
  Rational cst = 0;
  std::vector<Monomial> ms;
  auto take = [&](const Expr& t) {
    if (t.kind() == Kind::Num)
      cst += t.num();
    else
      ms.push_back(to_monomial(t));
  };
  for (const Expr& t : terms) {
    if (t.kind() == Kind::Sum)
      for (const Expr& k : t.kids()) take(k);
    else
      take(t);
  }
  std::sort(ms.begin(), ms.end(),
            [](const Monomial& a, const Monomial& b) { return factors_less(a.factors, b.factors); });
  std::vector<Expr> out;
  for (std::size_t i = 0; i < ms.size();) {
    Rational c = ms[i].coeff;
    std::size_t j = i + 1;
    while (j < ms.size() && factors_equal(ms[i].factors, ms[j].factors)) c += ms[j++].coeff;
    if (c != 0) out.push_back(from_monomial({std::move(c), std::move(ms[i].factors)}));
    i = j;
  }
  if (cst != 0) out.push_back(make_num(std::move(cst)));
  if (out.empty()) return zero_expr();
  if (out.size() == 1) return out[0];
  std::sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  Node n;
  n.kind = Kind::Sum;
  n.kids = std::move(out);
  return make_raw(std::move(n));
}

Expr mul(std::vector<Expr> factors) {
  Rational coeff = 1;
  std::vector<std::pair<Expr, long long>> pf;
  std::vector<std::pair<Expr, long long>> sums;  // sum bases to distribute
  auto take = [&](const Expr& f) {
    switch (f.kind()) {
      case Kind::Num:
        coeff *= f.num();
        break;
      case Kind::Sum:
        sums.emplace_back(f, 1);
        break;
      case Kind::Pow:
        if (f.base().kind() == Kind::Sum && f.exponent() > 0)
          sums.emplace_back(f.base(), f.exponent());
        else
          pf.emplace_back(f.base(), f.exponent());
        break;
      default:
        pf.emplace_back(f, 1);
        break;
    }
  };
  for (const Expr& f : factors) {
    if (f.kind() == Kind::Prod)
      for (const Expr& k : f.kids()) take(k);
    else
      take(f);
  }
  if (coeff == 0) return zero_expr();
  normalize_factors(pf);
  // Let an explicit sum cancel against the same sum sitting in a denominator;
  // this is as far as quotient cancellation goes (no polynomial division).
  for (auto& [s, k] : sums) {
    for (std::size_t i = 0; i < pf.size() && k > 0; ++i) {
      if (pf[i].second < 0 && equal(pf[i].first, s)) {
        long long cancel = std::min<long long>(k, -pf[i].second);
        k -= cancel;
        pf[i].second += cancel;
      }
    }
  }
  std::erase_if(pf, [](const auto& f) { return f.second == 0; });
  std::erase_if(sums, [](const auto& s) { return s.second == 0; });
  if (sums.empty()) return from_monomial({std::move(coeff), std::move(pf)});
  std::vector<Monomial> poly;
  poly.push_back({std::move(coeff), std::move(pf)});
  for (auto& [s, k] : sums) {
    std::vector<Monomial> sterms;
    sterms.reserve(s.kids().size());
    for (const Expr& t : s.kids()) sterms.push_back(to_monomial(t));
    for (long long rep = 0; rep < k; ++rep) {
      std::vector<Monomial> next;
      next.reserve(poly.size() * sterms.size());
      for (const Monomial& a : poly)
        for (const Monomial& b : sterms) {
          Monomial p = mono_mul(a, b);
          if (p.coeff != 0) next.push_back(std::move(p));
        }
      poly = std::move(next);
    }
  }
  std::vector<Expr> built;
  built.reserve(poly.size());
  for (Monomial& m : poly) built.push_back(from_monomial(std::move(m)));
  return add(std::move(built));
}

Expr powi(const Expr& b, long long k) {
  if (k == 0) return one_expr();  // includes 0^0 = 1 by convention
  if (k == 1) return b;
  switch (b.kind()) {
    case Kind::Num:
      return make_num(rational_pow(b.num(), k));
    case Kind::Pow:
      return powi(b.base(), checked_mul(b.exponent(), k));
    case Kind::Prod: {
      Monomial m = to_monomial(b);
      std::vector<Expr> parts;
      parts.reserve(m.factors.size() + 1);
      parts.push_back(make_num(rational_pow(m.coeff, k)));
      for (auto& [base, e] : m.factors) parts.push_back(powi(base, checked_mul(e, k)));
      return mul(std::move(parts));
    }
    case Kind::Sum: {
      if (k < 0) {
        Node n;
        n.kind = Kind::Pow;
        n.exp = k;
        n.kids.push_back(b);
        return make_raw(std::move(n));
      }
      if (k > 32) throw DomainError("sum raised to an unreasonable power", print(b));
      Expr r = one_expr();
      for (long long i = 0; i < k; ++i) r = mul({r, b});
      return r;
    }
    default: {
      Node n;
      n.kind = Kind::Pow;
      n.exp = k;
      n.kids.push_back(b);
      return make_raw(std::move(n));
    }
  }
}

Expr apply_fn(Fn f, const Expr& a) {
  if (a.is_num()) {
    const Rational& q = a.num();
    switch (f) {
      case Fn::Sin:
        if (q == 0) return zero_expr();
        break;
      case Fn::Cos:
      case Fn::Exp:
        if (q == 0) return one_expr();
        break;
      case Fn::Ln:
        if (q <= 0) throw DomainError("ln of a non-positive constant", print(a));
        if (q == 1) return zero_expr();
        break;
      case Fn::Sqrt:
        if (q < 0) throw DomainError("sqrt of a negative constant", print(a));
        if (q == 0) return zero_expr();
        if (q == 1) return one_expr();
        break;
    }
  }
  Node n;
  n.kind = Kind::Fun;
  n.fn = f;
  n.kids.push_back(a);
  return make_raw(std::move(n));
}

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case Kind::Num:
    case Kind::Sym:
      return e;
    case Kind::Fun:
      return apply_fn(e.fn(), simplify(e.arg()));
    case Kind::Pow:
      return powi(simplify(e.base()), e.exponent());
    case Kind::Prod: {
      std::vector<Expr> ks;
      ks.reserve(e.kids().size());
      for (const Expr& k : e.kids()) ks.push_back(simplify(k));
      return mul(std::move(ks));
    }
    case Kind::Sum: {
      std::vector<Expr> ks;
      ks.reserve(e.kids().size());
      for (const Expr& k : e.kids()) ks.push_back(simplify(k));
      return add(std::move(ks));
    }
  }
  return e;
}

Expr diff(const Expr& e, SymbolId x) {
  switch (e.kind()) {
    case Kind::Num:
      return zero_expr();
    case Kind::Sym:
      return e.sym() == x ? one_expr() : zero_expr();
    case Kind::Sum: {
      std::vector<Expr> parts;
      parts.reserve(e.kids().size());
      for (const Expr& k : e.kids()) parts.push_back(diff(k, x));
      return add(std::move(parts));
    }
    case Kind::Prod: {
      Monomial m = to_monomial(e);
      std::vector<Expr> parts;
      for (std::size_t i = 0; i < m.factors.size(); ++i) {
        Expr dfi = diff(m.factors[i].first, x);
        if (dfi.is_zero_literal()) continue;
        std::vector<Expr> term;
        term.push_back(make_num(m.coeff * m.factors[i].second));
        term.push_back(powi(m.factors[i].first, m.factors[i].second - 1));
        term.push_back(dfi);
        for (std::size_t j = 0; j < m.factors.size(); ++j)
          if (j != i) term.push_back(powi(m.factors[j].first, m.factors[j].second));
        parts.push_back(mul(std::move(term)));
      }
      return add(std::move(parts));
    }
    case Kind::Pow: {
      Expr db = diff(e.base(), x);
      if (db.is_zero_literal()) return zero_expr();
      return mul({make_num(e.exponent()), powi(e.base(), e.exponent() - 1), db});
    }
    case Kind::Fun: {
      Expr da = diff(e.arg(), x);
      if (da.is_zero_literal()) return zero_expr();
      switch (e.fn()) {
        case Fn::Sin: return mul({cos(e.arg()), da});
        case Fn::Cos: return mul({make_num(-1), sin(e.arg()), da});
        case Fn::Exp: return mul({e, da});
        case Fn::Ln: return mul({powi(e.arg(), -1), da});
        case Fn::Sqrt: return mul({make_num(1, 2), powi(e, -1), da});
      }
    }
  }
  return zero_expr();
}

Expr subst(const Expr& e, SymbolId x, const Expr& replacement) {
  switch (e.kind()) {
    case Kind::Num:
      return e;
    case Kind::Sym:
      return e.sym() == x ? replacement : e;
    case Kind::Fun:
      return apply_fn(e.fn(), subst(e.arg(), x, replacement));
    case Kind::Pow:
      return powi(subst(e.base(), x, replacement), e.exponent());
    case Kind::Prod: {
      std::vector<Expr> ks;
      ks.reserve(e.kids().size());
      for (const Expr& k : e.kids()) ks.push_back(subst(k, x, replacement));
      return mul(std::move(ks));
    }
    case Kind::Sum: {
      std::vector<Expr> ks;
      ks.reserve(e.kids().size());
      for (const Expr& k : e.kids()) ks.push_back(subst(k, x, replacement));
      return add(std::move(ks));
    }
  }
  return e;
}

void collect_symbols(const Expr& e, std::vector<SymbolId>& out) {
  switch (e.kind()) {
    case Kind::Num:
      return;
    case Kind::Sym:
      out.push_back(e.sym());
      return;
    default:
      for (const Expr& k : e.kids()) collect_symbols(k, out);
  }
}

std::vector<SymbolId> free_symbols(const Expr& e) {
  std::vector<SymbolId> out;
  collect_symbols(e, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::string factor_str(const Expr& base, long long e_abs) {
  std::string s;
  switch (base.kind()) {
    case Kind::Sym:
      s = base.sym_name();
      break;
    case Kind::Fun:
      s = std::string(fn_name(base.fn())) + "(" + print(base.arg()) + ")";
      break;
    default:
      s = "(" + print(base) + ")";
      break;
  }
  if (e_abs != 1) s += "^" + std::to_string(e_abs);
  return s;
}

// Unsigned monomial text; the caller owns the sign.
std::string mono_str(const Rational& coeff_abs,
                     const std::vector<std::pair<Expr, long long>>& fs) {
  std::string out;
  bool have_numer = false;
  for (const auto& [b, e] : fs)
    if (e > 0) have_numer = true;
  if (coeff_abs != 1 || !have_numer) out = to_string(coeff_abs);
  for (const auto& [b, e] : fs) {
    if (e <= 0) continue;
    if (!out.empty()) out += "*";
    out += factor_str(b, e);
  }
  for (const auto& [b, e] : fs) {
    if (e >= 0) continue;
    out += "/" + factor_str(b, -e);
  }
  return out;
}

// sign + magnitude text of a non-Sum canonical term
std::pair<bool, std::string> term_parts(const Expr& t) {
  Monomial m = to_monomial(t);
  bool neg = m.coeff < 0;
  Rational mag = neg ? Rational(-m.coeff) : m.coeff;
  return {neg, mono_str(mag, m.factors)};
}

}  // namespace

std::string print(const Expr& e) {
  if (e.kind() != Kind::Sum) {
    auto [neg, body] = term_parts(e);
    return neg ? "-" + body : body;
  }
  std::string out;
  bool first = true;
  for (const Expr& t : e.kids()) {
    auto [neg, body] = term_parts(t);
    if (first) {
      out = (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

namespace {

double ipow(double b, long long k) {
  bool inv = k < 0;
  auto n = inv ? 0ull - static_cast<unsigned long long>(k)
               : static_cast<unsigned long long>(k);
  double r = 1.0, p = b;
  while (n) {
    if (n & 1ull) r *= p;
    p *= p;
    n >>= 1;
  }
  return inv ? 1.0 / r : r;
}

}  // namespace

double eval(const Expr& e, const EvalEnv& env, ProbeStats* stats) {
  switch (e.kind()) {
    case Kind::Num:
      return e.num().template convert_to<double>();
    case Kind::Sym:
      if (!env.bound(e.sym()))
        throw EvalDomainError("unbound symbol in evaluation", e.sym_name());
      return env.get(e.sym());
    case Kind::Sum: {
      double s = 0.0;
      for (const Expr& k : e.kids()) s += eval(k, env, stats);
      return s;
    }
    case Kind::Prod: {
      double p = 1.0;
      for (const Expr& k : e.kids()) p *= eval(k, env, stats);
      return p;
    }
    case Kind::Pow: {
      double b = eval(e.base(), env, stats);
      if (e.exponent() < 0) {
        double ab = std::fabs(b);
        if (stats && ab < stats->min_denom) stats->min_denom = ab;
        if (b == 0.0) throw EvalDomainError("division by zero", print(e));
      }
      return ipow(b, e.exponent());
    }
    case Kind::Fun: {
      double v = eval(e.arg(), env, stats);
      switch (e.fn()) {
        case Fn::Sin: return std::sin(v);
        case Fn::Cos: return std::cos(v);
        case Fn::Exp: return std::exp(v);
        case Fn::Ln:
          if (v <= 0.0) throw EvalDomainError("ln of a non-positive value", print(e));
          return std::log(v);
        case Fn::Sqrt:
          if (v < 0.0) throw EvalDomainError("sqrt of a negative value", print(e));
          return std::sqrt(v);
      }
    }
  }
  return 0.0;
}

}  // namespace jetcurv

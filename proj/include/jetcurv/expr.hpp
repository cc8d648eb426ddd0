#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "jetcurv/rational.hpp"
#include "jetcurv/symbols.hpp"

namespace jetcurv {

// Immutable expression trees, canonicalized on construction.
//
// Canonical form, maintained by every builder below:
//   * sums are flat with at least two terms, like terms merged, at most one
//     rational constant, terms sorted by a fixed structural order;
//   * products are flat: an optional rational coefficient (never 0 or 1)
//     followed by base^exponent factors with pairwise distinct bases, sorted;
//   * products of sums are expanded, so every canonical expression is a sum
//     of monomials; a sum raised to a negative integer power stays atomic
//     and acts as an opaque denominator base;
//   * powers carry integer exponents only, never 0 or 1; division is
//     multiplication by a negative power;
//   * rational arithmetic is exact and folded eagerly.
// No function identities beyond fixed-point constants (sin(0), ln(1), ...)
// are applied; sin(t)^2 + cos(t)^2 - 1 is canonical and structurally nonzero.
// Deciding that kind of zero is zero_test.hpp's job.

enum class Kind : unsigned char { Num, Sym, Fun, Pow, Prod, Sum };
enum class Fn : unsigned char { Sin, Cos, Exp, Ln, Sqrt };

const char* fn_name(Fn f);

namespace detail {
struct Node;
}

class Expr {
 public:
  Expr();  // the constant 0

  Kind kind() const;
  std::size_t hash() const;

  // Accessors; each asserts the matching kind.
  const Rational& num() const;
  SymbolId sym() const;
  const std::string& sym_name() const;
  Fn fn() const;
  const Expr& arg() const;                 // Fun
  const Expr& base() const;                // Pow
  long long exponent() const;              // Pow
  const std::vector<Expr>& kids() const;   // Sum / Prod

  bool is_num() const { return kind() == Kind::Num; }
  bool is_zero_literal() const;
  bool is_one_literal() const;

  bool same_node(const Expr& o) const { return p_ == o.p_; }

  friend Expr make_raw(detail::Node&& n);

 private:
  explicit Expr(std::shared_ptr<const detail::Node> p) : p_(std::move(p)) {}
  std::shared_ptr<const detail::Node> p_;
};

// Total structural order: kind rank first, then contents (symbols by table
// id, so the SymbolTable registration order decides how terms sort).
int compare(const Expr& a, const Expr& b);
bool equal(const Expr& a, const Expr& b);

// Canonicalizing builders.
Expr make_num(Rational q);
Expr make_num(long long v);
Expr make_num(long long num, long long den);
Expr make_sym(SymbolId id, std::string name);
Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr powi(const Expr& b, long long k);
Expr apply_fn(Fn f, const Expr& a);

inline Expr sin(const Expr& a) { return apply_fn(Fn::Sin, a); }
inline Expr cos(const Expr& a) { return apply_fn(Fn::Cos, a); }
inline Expr exp(const Expr& a) { return apply_fn(Fn::Exp, a); }
inline Expr ln(const Expr& a) { return apply_fn(Fn::Ln, a); }
inline Expr sqrt(const Expr& a) { return apply_fn(Fn::Sqrt, a); }

inline Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
inline Expr operator-(const Expr& a, const Expr& b) {
  return add({a, mul({make_num(-1), b})});
}
inline Expr operator-(const Expr& a) { return mul({make_num(-1), a}); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
inline Expr operator/(const Expr& a, const Expr& b) {
  return mul({a, powi(b, -1)});
}

// Rebuilds bottom-up through the canonicalizing builders. A no-op on
// anything they produced; kept as the public fixed-point check.
Expr simplify(const Expr& e);

Expr diff(const Expr& e, SymbolId x);
Expr subst(const Expr& e, SymbolId x, const Expr& replacement);

void collect_symbols(const Expr& e, std::vector<SymbolId>& out);
std::vector<SymbolId> free_symbols(const Expr& e);

// Printed form reparses to the same canonical expression.
std::string print(const Expr& e);

struct EvalDomainError : DomainError {
  using DomainError::DomainError;
};

class EvalEnv {
 public:
  explicit EvalEnv(int table_size)
      : vals_(table_size, 0.0), set_(table_size, 0) {}
  void set(SymbolId id, double v) {
    vals_.at(id) = v;
    set_.at(id) = 1;
  }
  bool bound(SymbolId id) const {
    return id >= 0 && id < static_cast<int>(set_.size()) && set_[id];
  }
  double get(SymbolId id) const { return vals_[id]; }

 private:
  std::vector<double> vals_;
  std::vector<char> set_;
};

// Numeric side data gathered while evaluating: the smallest |base| seen
// under a negative power. Probing uses it to reject near-pole sample points.
struct ProbeStats {
  double min_denom = 1e300;
};

double eval(const Expr& e, const EvalEnv& env, ProbeStats* stats = nullptr);

}  // namespace jetcurv

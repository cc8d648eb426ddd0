#pragma once

#include "jetcurv/expr.hpp"
#include "jetcurv/symbols.hpp"

#include <string>
#include <vector>

namespace jetcurv {

// Coordinate bookkeeping for a first jet manifold over an n-dimensional
// base with an m-dimensional fibre. The coordinate directions are ordered
// base first, then fibre, then the derivative coordinates grouped by fibre
// index:
//
//   x^0 .. x^{n-1},  y^0 .. y^{m-1},  y^0_0 .. y^0_{n-1}, y^1_0 .. ...
//
// for a total of dim() = n + m + n*m directions. This one ordering is used
// for frames, coframes and (through the symbol table) canonical term
// sorting, so every component table in the library agrees on it.
//
// Derivative coordinates are named "<fibre>_<base>", e.g. fibre "r" over
// base "t" gives "r_t". Extra non-coordinate symbols (constants and the
// like) can be registered afterwards through param().
class JetContext {
 public:
  JetContext(std::vector<std::string> base_names,
             std::vector<std::string> fibre_names);

  int n() const { return n_; }
  int m() const { return m_; }
  int dim() const { return n_ + m_ + n_ * m_; }

  // Direction indices within the fixed frame order.
  int dir_x(int i) const;
  int dir_y(int s) const;
  int dir_jet(int s, int i) const;

  SymbolId dir_symbol(int dir) const;
  const std::string& dir_name(int dir) const;

  // Coordinate expressions.
  Expr x(int i) const;
  Expr y(int s) const;
  Expr jet(int s, int i) const;
  Expr coord(int dir) const;

  // Partial derivative along one frame direction.
  Expr d(const Expr& e, int dir) const;

  // Registers a parameter symbol, or returns the existing one. Fails if the
  // name is taken by a coordinate.
  Expr param(const std::string& name);

  Expr parse_expr(const std::string& text) const;

  const SymbolTable& symbols() const { return tab_; }

 private:
  int n_;
  int m_;
  SymbolTable tab_;
  std::vector<SymbolId> ids_;    // one per direction, frame order
  std::vector<std::string> names_;
};

}  // namespace jetcurv

#pragma once

#include <string>
#include <string_view>

#include "jetcurv/expr.hpp"

namespace jetcurv {

// Raised for syntax errors and unknown identifiers; `pos` is a 1-based
// character offset into the input.
struct ParseError : SymbolicError {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t p)
      : SymbolicError(msg + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

// Grammar, bit for bit:
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' exponent)?
//   exponent:= '-'? digits ('^' exponent)?        right-associative, folded
//   primary := digits | ident | ident '(' expr ')' | '(' expr ')'
//   ident   := [A-Za-z][A-Za-z0-9_]*
// Whitespace is insignificant. Function names are sin, cos, exp, ln, sqrt;
// every other identifier must already be in the symbol table.
Expr parse(std::string_view text, const SymbolTable& symbols);

}  // namespace jetcurv

#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jetcurv/rational.hpp"

namespace jetcurv {

using SymbolId = int;

enum class SymbolRole : unsigned char {
  BaseCoord,   // x^i on the base manifold
  FibreCoord,  // y^sigma
  JetCoord,    // y^sigma_i, first derivative coordinates
  Parameter,   // anything else the user declares
};

struct UnknownSymbolError : SymbolicError {
  std::string name;
  explicit UnknownSymbolError(std::string n)
      : SymbolicError("unknown symbol '" + n + "'"), name(std::move(n)) {}
};

inline bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s[0])) return false;
  for (char c : s.substr(1))
    if (!alpha(c) && !digit(c) && c != '_') return false;
  return true;
}

// Registration order is load-bearing: it defines the total order used when
// canonical expressions sort their terms, so two tables with the same
// registration sequence produce identical printed output.
class SymbolTable {
 public:
  SymbolId add(std::string name, SymbolRole role) {
    if (!valid_identifier(name))
      throw SymbolicError("invalid symbol name '" + name + "'");
    if (index_.count(name))
      throw SymbolicError("duplicate symbol name '" + name + "'");
    auto id = static_cast<SymbolId>(entries_.size());
    index_.emplace(name, id);
    entries_.push_back({std::move(name), role});
    return id;
  }

  SymbolId lookup(std::string_view name) const {  // -1 when absent
    auto it = index_.find(std::string(name));
    return it == index_.end() ? -1 : it->second;
  }

  SymbolId require(std::string_view name) const {
    SymbolId id = lookup(name);
    if (id < 0) throw UnknownSymbolError(std::string(name));
    return id;
  }

  bool has(std::string_view name) const { return lookup(name) >= 0; }

  const std::string& name(SymbolId id) const { return entries_.at(id).name; }
  SymbolRole role(SymbolId id) const { return entries_.at(id).role; }
  int size() const { return static_cast<int>(entries_.size()); }

 private:
  struct Entry {
    std::string name;
    SymbolRole role;
  };
  std::vector<Entry> entries_;
  std::unordered_map<std::string, SymbolId> index_;
};

}  // namespace jetcurv

#include "jetcurv/jet_context.hpp"

#include "jetcurv/parse.hpp"

#include <stdexcept>

namespace jetcurv {

JetContext::JetContext(std::vector<std::string> base_names,
                       std::vector<std::string> fibre_names)
    : n_(static_cast<int>(base_names.size())),
      m_(static_cast<int>(fibre_names.size())) {
  if (n_ < 1) throw std::invalid_argument("need at least one base coordinate");
  if (m_ < 1) throw std::invalid_argument("need at least one fibre coordinate");

  ids_.reserve(dim());
  names_.reserve(dim());
  for (const auto& name : base_names) {
    ids_.push_back(tab_.add(name, SymbolRole::BaseCoord));
    names_.push_back(name);
  }
  for (const auto& name : fibre_names) {
    ids_.push_back(tab_.add(name, SymbolRole::FibreCoord));
    names_.push_back(name);
  }
  for (const auto& fib : fibre_names) {
    for (const auto& base : base_names) {
      std::string name = fib + "_" + base;
      ids_.push_back(tab_.add(name, SymbolRole::JetCoord));
      names_.push_back(std::move(name));
    }
  }
}

int JetContext::dir_x(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("base index out of range");
  return i;
}

int JetContext::dir_y(int s) const {
  if (s < 0 || s >= m_) throw std::out_of_range("fibre index out of range");
  return n_ + s;
}

int JetContext::dir_jet(int s, int i) const {
  if (s < 0 || s >= m_) throw std::out_of_range("fibre index out of range");
  if (i < 0 || i >= n_) throw std::out_of_range("base index out of range");
  return n_ + m_ + s * n_ + i;
}

SymbolId JetContext::dir_symbol(int dir) const {
  if (dir < 0 || dir >= dim()) throw std::out_of_range("direction out of range");
  return ids_[dir];
}

const std::string& JetContext::dir_name(int dir) const {
  if (dir < 0 || dir >= dim()) throw std::out_of_range("direction out of range");
  return names_[dir];
}

Expr JetContext::x(int i) const {
  int dir = dir_x(i);
  return make_sym(ids_[dir], names_[dir]);
}

Expr JetContext::y(int s) const {
  int dir = dir_y(s);
  return make_sym(ids_[dir], names_[dir]);
}

Expr JetContext::jet(int s, int i) const {
  int dir = dir_jet(s, i);
  return make_sym(ids_[dir], names_[dir]);
}

Expr JetContext::coord(int dir) const {
  if (dir < 0 || dir >= dim()) throw std::out_of_range("direction out of range");
  return make_sym(ids_[dir], names_[dir]);
}

Expr JetContext::d(const Expr& e, int dir) const {
  return diff(e, dir_symbol(dir));
}

Expr JetContext::param(const std::string& name) {
  SymbolId id = tab_.lookup(name);
  if (id >= 0) {
    if (tab_.role(id) != SymbolRole::Parameter)
      throw std::invalid_argument("'" + name + "' names a coordinate, not a parameter");
    return make_sym(id, name);
  }
  return make_sym(tab_.add(name, SymbolRole::Parameter), name);
}

Expr JetContext::parse_expr(const std::string& text) const {
  return parse(text, tab_);
}

}  // namespace jetcurv

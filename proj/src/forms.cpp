#include "jetcurv/forms.hpp"

#include <stdexcept>
#include <utility>

namespace jetcurv {

namespace {

Expr zero() { return make_num(0); }

int block_size(int degree, int dim) {
  switch (degree) {
    case 0: return 1;
    case 1: return dim;
    case 2: return pair_count(dim);
    default: throw DimensionError("form degree must be 0, 1 or 2");
  }
}

void want_same(int a, int b, const char* what) {
  if (a != b) throw DimensionError(std::string("mismatched ") + what);
}

}  // namespace

VectorField::VectorField(const JetContext& ctx)
    : comp(ctx.dim(), zero()) {}

DiffForm::DiffForm(const JetContext& ctx, int deg)
    : degree(deg), comp(block_size(deg, ctx.dim()), zero()) {}

Expr DiffForm::entry2(int p, int q) const {
  if (degree != 2) throw DimensionError("entry2 needs a degree-2 form");
  if (p == q) return zero();
  // comp.size() == dim(dim-1)/2, so recover dim from it
  int dim = 1;
  while (pair_count(dim) < static_cast<int>(comp.size())) ++dim;
  if (p < q) return comp[pair_index(p, q, dim)];
  return make_num(-1) * comp[pair_index(q, p, dim)];
}

VectorValuedForm::VectorValuedForm(const JetContext& ctx, int deg)
    : degree(deg), dim(ctx.dim()),
      comp(static_cast<std::size_t>(ctx.dim()) * block_size(deg, ctx.dim()), zero()) {}

int VectorValuedForm::block() const { return block_size(degree, dim); }

VectorField operator+(const VectorField& a, const VectorField& b) {
  want_same(a.dim(), b.dim(), "vector field dimensions");
  VectorField out;
  out.comp.reserve(a.comp.size());
  for (std::size_t i = 0; i < a.comp.size(); ++i)
    out.comp.push_back(a.comp[i] + b.comp[i]);
  return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  want_same(a.dim(), b.dim(), "vector field dimensions");
  VectorField out;
  out.comp.reserve(a.comp.size());
  for (std::size_t i = 0; i < a.comp.size(); ++i)
    out.comp.push_back(a.comp[i] - b.comp[i]);
  return out;
}

VectorField operator*(const Expr& f, const VectorField& a) {
  VectorField out;
  out.comp.reserve(a.comp.size());
  for (const Expr& c : a.comp) out.comp.push_back(mul({f, c}));
  return out;
}

DiffForm operator+(const DiffForm& a, const DiffForm& b) {
  want_same(a.degree, b.degree, "form degrees");
  want_same(static_cast<int>(a.comp.size()), static_cast<int>(b.comp.size()),
            "form dimensions");
  DiffForm out;
  out.degree = a.degree;
  out.comp.reserve(a.comp.size());
  for (std::size_t i = 0; i < a.comp.size(); ++i)
    out.comp.push_back(a.comp[i] + b.comp[i]);
  return out;
}

DiffForm operator-(const DiffForm& a, const DiffForm& b) {
  return a + (make_num(-1) * b);
}

DiffForm operator*(const Expr& f, const DiffForm& a) {
  DiffForm out;
  out.degree = a.degree;
  out.comp.reserve(a.comp.size());
  for (const Expr& c : a.comp) out.comp.push_back(mul({f, c}));
  return out;
}

VectorValuedForm operator+(const VectorValuedForm& a, const VectorValuedForm& b) {
  want_same(a.degree, b.degree, "form degrees");
  want_same(a.dim, b.dim, "dimensions");
  VectorValuedForm out;
  out.degree = a.degree;
  out.dim = a.dim;
  out.comp.reserve(a.comp.size());
  for (std::size_t i = 0; i < a.comp.size(); ++i)
    out.comp.push_back(a.comp[i] + b.comp[i]);
  return out;
}

VectorValuedForm operator-(const VectorValuedForm& a, const VectorValuedForm& b) {
  return a + (make_num(-1) * b);
}

VectorValuedForm operator*(const Expr& f, const VectorValuedForm& a) {
  VectorValuedForm out;
  out.degree = a.degree;
  out.dim = a.dim;
  out.comp.reserve(a.comp.size());
  for (const Expr& c : a.comp) out.comp.push_back(mul({f, c}));
  return out;
}

VectorField frame_field(const JetContext& ctx, int dir) {
  VectorField out(ctx);
  out.comp[dir] = make_num(1);
  return out;
}

DiffForm coframe_form(const JetContext& ctx, int dir) {
  DiffForm out(ctx, 1);
  out.comp[dir] = make_num(1);
  return out;
}

VectorValuedForm identity_vvf(const JetContext& ctx) {
  VectorValuedForm out(ctx, 1);
  for (int a = 0; a < out.dim; ++a) out.at(a, a) = make_num(1);
  return out;
}

VectorValuedForm tensor(const DiffForm& alpha, const VectorField& X) {
  VectorValuedForm out;
  out.degree = alpha.degree;
  out.dim = X.dim();
  int nb = static_cast<int>(alpha.comp.size());
  out.comp.reserve(static_cast<std::size_t>(out.dim) * nb);
  for (int a = 0; a < out.dim; ++a)
    for (int k = 0; k < nb; ++k)
      out.comp.push_back(mul({alpha.comp[k], X.comp[a]}));
  return out;
}

VectorField as_vector_field(const VectorValuedForm& A) {
  if (A.degree != 0) throw DimensionError("only a degree-0 form is a vector field");
  VectorField out;
  out.comp = A.comp;
  return out;
}

VectorValuedForm as_vvf(const VectorField& U) {
  VectorValuedForm out;
  out.degree = 0;
  out.dim = U.dim();
  out.comp = U.comp;
  return out;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  if (a.degree != 1 || b.degree != 1)
    throw DimensionError("wedge is implemented for two 1-forms");
  want_same(static_cast<int>(a.comp.size()), static_cast<int>(b.comp.size()),
            "form dimensions");
  int dim = static_cast<int>(a.comp.size());
  DiffForm out;
  out.degree = 2;
  out.comp.assign(pair_count(dim), zero());
  for (int p = 0; p < dim; ++p)
    for (int q = p + 1; q < dim; ++q)
      out.comp[pair_index(p, q, dim)] =
          add({mul({a.comp[p], b.comp[q]}), make_num(-1) * mul({a.comp[q], b.comp[p]})});
  return out;
}

DiffForm exterior_d(const JetContext& ctx, const DiffForm& f) {
  int dim = ctx.dim();
  if (f.degree == 0) {
    DiffForm out(ctx, 1);
    for (int a = 0; a < dim; ++a) out.comp[a] = ctx.d(f.comp[0], a);
    return out;
  }
  if (f.degree == 1) {
    DiffForm out(ctx, 2);
    for (int p = 0; p < dim; ++p)
      for (int q = p + 1; q < dim; ++q)
        out.comp[pair_index(p, q, dim)] =
            ctx.d(f.comp[q], p) - ctx.d(f.comp[p], q);
    return out;
  }
  throw DimensionError("exterior derivative of a degree-2 form is out of scope");
}

Expr directional(const JetContext& ctx, const VectorField& U, const Expr& e) {
  std::vector<Expr> parts;
  for (int a = 0; a < ctx.dim(); ++a) parts.push_back(mul({U.comp[a], ctx.d(e, a)}));
  return add(std::move(parts));
}

Expr interior(const VectorField& U, const DiffForm& alpha) {
  if (alpha.degree != 1) throw DimensionError("scalar interior product needs degree 1");
  want_same(U.dim(), static_cast<int>(alpha.comp.size()), "dimensions");
  std::vector<Expr> parts;
  for (int a = 0; a < U.dim(); ++a) parts.push_back(mul({U.comp[a], alpha.comp[a]}));
  return add(std::move(parts));
}

DiffForm interior2(const VectorField& U, const DiffForm& omega) {
  if (omega.degree != 2) throw DimensionError("interior2 needs a degree-2 form");
  int dim = U.dim();
  want_same(pair_count(dim), static_cast<int>(omega.comp.size()), "dimensions");
  DiffForm out;
  out.degree = 1;
  out.comp.assign(dim, zero());
  for (int b = 0; b < dim; ++b) {
    std::vector<Expr> parts;
    for (int a = 0; a < b; ++a)
      parts.push_back(mul({U.comp[a], omega.comp[pair_index(a, b, dim)]}));
    for (int a = b + 1; a < dim; ++a)
      parts.push_back(make_num(-1) * mul({U.comp[a], omega.comp[pair_index(b, a, dim)]}));
    out.comp[b] = add(std::move(parts));
  }
  return out;
}

VectorValuedForm interior(const VectorField& U, const VectorValuedForm& A) {
  if (A.degree < 1) throw DimensionError("interior product needs degree >= 1");
  want_same(U.dim(), A.dim, "dimensions");
  VectorValuedForm out;
  out.degree = A.degree - 1;
  out.dim = A.dim;
  out.comp.reserve(static_cast<std::size_t>(A.dim) * block_size(out.degree, A.dim));
  for (int a = 0; a < A.dim; ++a) {
    DiffForm row;
    row.degree = A.degree;
    row.comp.assign(A.comp.begin() + a * A.block(),
                    A.comp.begin() + (a + 1) * A.block());
    if (A.degree == 1) {
      out.comp.push_back(interior(U, row));
    } else {
      DiffForm slot = interior2(U, row);
      out.comp.insert(out.comp.end(), slot.comp.begin(), slot.comp.end());
    }
  }
  return out;
}

VectorField lie_bracket(const JetContext& ctx, const VectorField& U,
                        const VectorField& W) {
  int dim = ctx.dim();
  want_same(U.dim(), dim, "dimensions");
  want_same(W.dim(), dim, "dimensions");
  VectorField out(ctx);
  for (int a = 0; a < dim; ++a) {
    std::vector<Expr> parts;
    for (int c = 0; c < dim; ++c) {
      parts.push_back(mul({U.comp[c], ctx.d(W.comp[a], c)}));
      parts.push_back(make_num(-1) * mul({W.comp[c], ctx.d(U.comp[a], c)}));
    }
    out.comp[a] = add(std::move(parts));
  }
  return out;
}

DiffForm lie_form(const JetContext& ctx, const VectorField& U, const DiffForm& alpha) {
  int dim = ctx.dim();
  want_same(U.dim(), dim, "dimensions");
  switch (alpha.degree) {
    case 0: {
      // Cartan formula collapses to i_U df for a function.
      DiffForm out;
      out.degree = 0;
      out.comp = {interior(U, exterior_d(ctx, alpha))};
      return out;
    }
    case 1: {
      // L_U = i_U d + d i_U
      DiffForm din = interior2(U, exterior_d(ctx, alpha));
      DiffForm scal;
      scal.degree = 0;
      scal.comp = {interior(U, alpha)};
      return din + exterior_d(ctx, scal);
    }
    case 2: {
      // The coordinate formula; d of a 2-form is out of scope here.
      DiffForm out(ctx, 2);
      for (int p = 0; p < dim; ++p)
        for (int q = p + 1; q < dim; ++q) {
          std::vector<Expr> parts;
          for (int e = 0; e < dim; ++e) {
            parts.push_back(mul({U.comp[e], ctx.d(alpha.comp[pair_index(p, q, dim)], e)}));
            parts.push_back(mul({alpha.entry2(e, q), ctx.d(U.comp[e], p)}));
            parts.push_back(mul({alpha.entry2(p, e), ctx.d(U.comp[e], q)}));
          }
          out.comp[pair_index(p, q, dim)] = add(std::move(parts));
        }
      return out;
    }
    default:
      throw DimensionError("unsupported form degree");
  }
}

VectorValuedForm lie_vvf(const JetContext& ctx, const VectorField& U,
                         const VectorValuedForm& A) {
  int dim = ctx.dim();
  want_same(A.dim, dim, "dimensions");
  VectorValuedForm out(ctx, A.degree);

  if (A.degree == 0) {
    VectorField W = as_vector_field(A);
    return as_vvf(lie_bracket(ctx, U, W));
  }

  if (A.degree == 1) {
    for (int a = 0; a < dim; ++a)
      for (int c = 0; c < dim; ++c) {
        std::vector<Expr> parts;
        for (int e = 0; e < dim; ++e) {
          parts.push_back(mul({U.comp[e], ctx.d(A.at(a, c), e)}));
          parts.push_back(mul({A.at(a, e), ctx.d(U.comp[e], c)}));
          parts.push_back(make_num(-1) * mul({A.at(e, c), ctx.d(U.comp[a], e)}));
        }
        out.at(a, c) = add(std::move(parts));
      }
    return out;
  }

  // degree 2: Lie-derive each row as a 2-form, then correct for the moving
  // output frame exactly as in the degree-1 case.
  for (int a = 0; a < dim; ++a) {
    DiffForm row;
    row.degree = 2;
    row.comp.assign(A.comp.begin() + a * A.block(),
                    A.comp.begin() + (a + 1) * A.block());
    for (int p = 0; p < dim; ++p)
      for (int q = p + 1; q < dim; ++q) {
        int k = pair_index(p, q, dim);
        std::vector<Expr> parts;
        for (int e = 0; e < dim; ++e) {
          parts.push_back(mul({U.comp[e], ctx.d(A.at(a, k), e)}));
          parts.push_back(mul({row.entry2(e, q), ctx.d(U.comp[e], p)}));
          parts.push_back(mul({row.entry2(p, e), ctx.d(U.comp[e], q)}));
          parts.push_back(make_num(-1) * mul({A.at(e, k), ctx.d(U.comp[a], e)}));
        }
        out.at(a, k) = add(std::move(parts));
      }
  }
  return out;
}

VectorField apply(const VectorValuedForm& A, const VectorField& U) {
  if (A.degree != 1) throw DimensionError("apply(A, U) needs degree 1");
  want_same(A.dim, U.dim(), "dimensions");
  VectorField out;
  out.comp.reserve(A.dim);
  for (int a = 0; a < A.dim; ++a) {
    std::vector<Expr> parts;
    for (int c = 0; c < A.dim; ++c) parts.push_back(mul({A.at(a, c), U.comp[c]}));
    out.comp.push_back(add(std::move(parts)));
  }
  return out;
}

VectorField apply(const VectorValuedForm& A, const VectorField& U,
                  const VectorField& W) {
  if (A.degree != 2) throw DimensionError("apply(A, U, W) needs degree 2");
  want_same(A.dim, U.dim(), "dimensions");
  want_same(A.dim, W.dim(), "dimensions");
  int dim = A.dim;
  VectorField out;
  out.comp.reserve(dim);
  for (int a = 0; a < dim; ++a) {
    std::vector<Expr> parts;
    for (int p = 0; p < dim; ++p)
      for (int q = p + 1; q < dim; ++q)
        parts.push_back(mul({A.at(a, pair_index(p, q, dim)),
                             add({mul({U.comp[p], W.comp[q]}),
                                  make_num(-1) * mul({U.comp[q], W.comp[p]})})}));
    out.comp.push_back(add(std::move(parts)));
  }
  return out;
}

VectorValuedForm vvf_compose(const VectorValuedForm& A, const VectorValuedForm& B) {
  if (A.degree != 1) throw DimensionError("vvf_compose needs a degree-1 left factor");
  want_same(A.dim, B.dim, "dimensions");
  VectorValuedForm out;
  out.degree = B.degree;
  out.dim = B.dim;
  int nb = B.block();
  out.comp.assign(static_cast<std::size_t>(B.dim) * nb, zero());
  for (int a = 0; a < B.dim; ++a)
    for (int k = 0; k < nb; ++k) {
      std::vector<Expr> parts;
      for (int b = 0; b < B.dim; ++b) parts.push_back(mul({A.at(a, b), B.at(b, k)}));
      out.at(a, k) = add(std::move(parts));
    }
  return out;
}

void add_term1(VectorValuedForm& A, int out_dir, int form_dir, const Expr& coeff) {
  if (A.degree != 1) throw DimensionError("add_term1 needs degree 1");
  A.at(out_dir, form_dir) = A.at(out_dir, form_dir) + coeff;
}

void add_term2(VectorValuedForm& A, int out_dir, int u, int w, const Expr& coeff) {
  if (A.degree != 2) throw DimensionError("add_term2 needs degree 2");
  if (u == w) return;
  if (u < w)
    A.at(out_dir, pair_index(u, w, A.dim)) =
        A.at(out_dir, pair_index(u, w, A.dim)) + coeff;
  else
    A.at(out_dir, pair_index(w, u, A.dim)) =
        A.at(out_dir, pair_index(w, u, A.dim)) - coeff;
}

ComponentsZero components_zero(const std::vector<Expr>& comps,
                               const ZeroOptions& opts) {
  ComponentsZero out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    ZeroResult r = is_zero(comps[i], opts);
    if (!r.zero) {
      out.zero = false;
      out.failed_index = static_cast<int>(i);
      out.tier = r.tier;
      return out;
    }
    if (r.tier == ZeroTier::Numeric) out.tier = ZeroTier::Numeric;
  }
  return out;
}

}  // namespace jetcurv

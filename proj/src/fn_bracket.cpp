#include "jetcurv/fn_bracket.hpp"

#include <utility>
#include <vector>

namespace jetcurv {

namespace {

// [[A, B]] for two degree-1 arguments, by expanding both over coordinate
// decomposables f dz^a (x) e_c and applying the bracket of a decomposable
// pair termwise. With constant-coefficient frame fields the pure Lie-bracket
// term drops and what survives of
//
//   [[w (x) U, n (x) W]] = w^n (x) [U,W] + w^L_U n (x) W - L_W w^n (x) U
//                          - (dw^i_U n (x) W + i_W w^dn (x) U)
//
// is, per pair (f dz^a (x) e_c, g dz^b (x) e_d):
//
//   row d, dz^a^dz^b :  f dg/dz^c
//   row c, dz^a^dz^b : -g df/dz^d
//   row d, dz^e^dz^a : -g df/dz^e      when b == c
//   row c, dz^e^dz^b : -f dg/dz^e      when a == d
//
// Every contribution funnels into a per-bucket parts vector so each output
// component is canonicalized by a single add() at the end.
VectorValuedForm fn11(const JetContext& ctx, const VectorValuedForm& A,
                      const VectorValuedForm& B) {
  const int dim = ctx.dim();
  const int pc = pair_count(dim);
  VectorValuedForm out(ctx, 2);
  std::vector<std::vector<Expr>> parts(static_cast<std::size_t>(dim) * pc);

  auto sink = [&](int row, int u, int w, Expr coeff, bool negate) {
    if (u == w || coeff.is_zero_literal()) return;
    bool neg = negate;
    if (u > w) {
      std::swap(u, w);
      neg = !neg;
    }
    if (neg) coeff = make_num(-1) * std::move(coeff);
    parts[static_cast<std::size_t>(row) * pc + pair_index(u, w, dim)].push_back(
        std::move(coeff));
  };

  // Gradient tables, indexed [entry][direction].
  auto gradients = [&](const VectorValuedForm& M) {
    std::vector<std::vector<Expr>> g(M.comp.size());
    for (std::size_t i = 0; i < M.comp.size(); ++i) {
      if (M.comp[i].is_zero_literal()) continue;
      g[i].assign(dim, make_num(0));
      for (int e = 0; e < dim; ++e) g[i][e] = ctx.d(M.comp[i], e);
    }
    return g;
  };
  const auto dA = gradients(A);
  const auto dB = gradients(B);

  for (int c = 0; c < dim; ++c)
    for (int a = 0; a < dim; ++a) {
      const Expr& f = A.at(c, a);
      if (f.is_zero_literal()) continue;
      const auto& df = dA[static_cast<std::size_t>(c) * dim + a];
      for (int d = 0; d < dim; ++d)
        for (int b = 0; b < dim; ++b) {
          const Expr& g = B.at(d, b);
          if (g.is_zero_literal()) continue;
          const auto& dg = dB[static_cast<std::size_t>(d) * dim + b];

          if (!dg[c].is_zero_literal()) sink(d, a, b, mul({f, dg[c]}), false);
          if (!df[d].is_zero_literal()) sink(c, a, b, mul({g, df[d]}), true);
          if (b == c)
            for (int e = 0; e < dim; ++e)
              if (!df[e].is_zero_literal()) sink(d, e, a, mul({g, df[e]}), true);
          if (a == d)
            for (int e = 0; e < dim; ++e)
              if (!dg[e].is_zero_literal()) sink(c, e, b, mul({f, dg[e]}), true);
        }
    }

  for (int r = 0; r < dim; ++r)
    for (int k = 0; k < pc; ++k)
      out.at(r, k) = add(std::move(parts[static_cast<std::size_t>(r) * pc + k]));
  return out;
}

}  // namespace

VectorValuedForm fn_bracket(const JetContext& ctx, const VectorValuedForm& A,
                            const VectorValuedForm& B) {
  if (A.dim != ctx.dim() || B.dim != ctx.dim())
    throw DimensionError("argument built over a different context");
  const int a = A.degree;
  const int b = B.degree;
  if (a == 0 && b == 0)
    return as_vvf(lie_bracket(ctx, as_vector_field(A), as_vector_field(B)));
  if (a == 0) return lie_vvf(ctx, as_vector_field(A), B);
  if (b == 0) return make_num(-1) * lie_vvf(ctx, as_vector_field(B), A);
  if (a == 1 && b == 1) return fn11(ctx, A, B);
  throw DimensionError("bracket degree above 2 is out of scope");
}

}  // namespace jetcurv

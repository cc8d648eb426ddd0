#pragma once

#include "jetcurv/expr.hpp"
#include "jetcurv/jet_context.hpp"
#include "jetcurv/zero_test.hpp"

#include <vector>

namespace jetcurv {

struct DimensionError : SymbolicError {
  explicit DimensionError(const std::string& what) : SymbolicError(what) {}
};

// Degree-2 component tables are stored strictly upper triangular over the
// frame order: the entry for the pair (p, q) with p < q holds the full
// antisymmetrized coefficient, under the convention
//
//   (alpha ^ beta)(U, W) = alpha(U) beta(W) - alpha(W) beta(U).
//
// pair_index enumerates (0,1), (0,2), ..., (0,D-1), (1,2), ... row by row.
inline int pair_count(int dim) { return dim * (dim - 1) / 2; }

inline int pair_index(int p, int q, int dim) {
  // requires 0 <= p < q < dim
  return p * (2 * dim - p - 1) / 2 + (q - p - 1);
}

// A vector field: one coefficient per frame direction.
struct VectorField {
  std::vector<Expr> comp;

  VectorField() = default;
  explicit VectorField(const JetContext& ctx);
  int dim() const { return static_cast<int>(comp.size()); }
};

// A scalar differential form of degree 0, 1 or 2.
struct DiffForm {
  int degree = 0;
  std::vector<Expr> comp;  // 1, dim, or pair_count(dim) entries

  DiffForm() = default;
  DiffForm(const JetContext& ctx, int degree);

  // Signed lookup into the degree-2 table for an arbitrary index pair.
  Expr entry2(int p, int q) const;
};

// A vector-valued form: for each output frame direction, a block of scalar
// coefficients laid out like the matching DiffForm. Degree 1 is a pointwise
// endomorphism of the tangent bundle; at(a, c) multiplies dz^c in row a.
struct VectorValuedForm {
  int degree = 0;
  int dim = 0;
  std::vector<Expr> comp;  // dim * block(), row-major by output direction

  VectorValuedForm() = default;
  VectorValuedForm(const JetContext& ctx, int degree);

  int block() const;
  Expr& at(int a, int k) { return comp[a * block() + k]; }
  const Expr& at(int a, int k) const { return comp[a * block() + k]; }
};

// Componentwise linear algebra. Sizes and degrees must match.
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(const Expr& f, const VectorField& a);
DiffForm operator+(const DiffForm& a, const DiffForm& b);
DiffForm operator-(const DiffForm& a, const DiffForm& b);
DiffForm operator*(const Expr& f, const DiffForm& a);
VectorValuedForm operator+(const VectorValuedForm& a, const VectorValuedForm& b);
VectorValuedForm operator-(const VectorValuedForm& a, const VectorValuedForm& b);
VectorValuedForm operator*(const Expr& f, const VectorValuedForm& a);

// Basis elements and common constants.
VectorField frame_field(const JetContext& ctx, int dir);
DiffForm coframe_form(const JetContext& ctx, int dir);
VectorValuedForm identity_vvf(const JetContext& ctx);

// alpha (x) X, degree carried by alpha.
VectorValuedForm tensor(const DiffForm& alpha, const VectorField& X);

// Degree-0 vector-valued forms are vector fields in a different coat.
VectorField as_vector_field(const VectorValuedForm& A);
VectorValuedForm as_vvf(const VectorField& U);

DiffForm wedge(const DiffForm& a, const DiffForm& b);  // degrees 1,1 -> 2

DiffForm exterior_d(const JetContext& ctx, const DiffForm& f);  // degree <= 1

// Interior product in the first slot; degree drops by one.
// Derivative of a function along a vector field, U^a d_a e.
Expr directional(const JetContext& ctx, const VectorField& U, const Expr& e);

Expr interior(const VectorField& U, const DiffForm& alpha);          // degree 1
DiffForm interior2(const VectorField& U, const DiffForm& omega);     // degree 2
VectorValuedForm interior(const VectorField& U, const VectorValuedForm& A);

[[nodiscard]] VectorField lie_bracket(const JetContext& ctx, const VectorField& U,
                                      const VectorField& W);
DiffForm lie_form(const JetContext& ctx, const VectorField& U, const DiffForm& alpha);
VectorValuedForm lie_vvf(const JetContext& ctx, const VectorField& U,
                         const VectorValuedForm& A);

// Pointwise application of the endomorphism part.
VectorField apply(const VectorValuedForm& A, const VectorField& U);  // degree 1
VectorField apply(const VectorValuedForm& A, const VectorField& U,
                  const VectorField& W);  // degree 2

// Post-composition (A . B)(...) = A(B(...)); A must have degree 1.
VectorValuedForm vvf_compose(const VectorValuedForm& A, const VectorValuedForm& B);

// Accumulators used when assembling a vector-valued form from a displayed
// coordinate expression with an implicit sum over ALL ordered index pairs.
// Terms with u == w drop out; u > w lands with a minus sign.
void add_term1(VectorValuedForm& A, int out_dir, int form_dir, const Expr& coeff);
void add_term2(VectorValuedForm& A, int out_dir, int u, int w, const Expr& coeff);

// Zero test over a whole component table.
struct ComponentsZero {
  bool zero = true;
  ZeroTier tier = ZeroTier::Symbolic;  // weakest tier that was needed
  int failed_index = -1;               // first non-zero component, -1 if none
  explicit operator bool() const { return zero; }
};
ComponentsZero components_zero(const std::vector<Expr>& comps,
                               const ZeroOptions& opts = {});

}  // namespace jetcurv

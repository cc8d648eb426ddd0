#pragma once

#include "jetcurv/fn_bracket.hpp"
#include "jetcurv/forms.hpp"
#include "jetcurv/oracle.hpp"

#include <vector>

namespace jetcurv {

// A system of second order equations in connection form: the coefficient
// functions F^s_ij, symmetric in the two base indices, each free to depend
// on every coordinate. Storage keeps only i <= j; reads mirror.
class Connection {
 public:
  explicit Connection(const JetContext& ctx);

  const JetContext& ctx() const { return *ctx_; }

  void set(int s, int i, int j, Expr e);
  const Expr& at(int s, int i, int j) const;

  // All stored entries, for guard evaluation when sampling points.
  const std::vector<Expr>& entries() const { return f_; }

 private:
  const JetContext* ctx_;
  std::vector<Expr> f_;  // s-major, upper triangular in (i, j)
};

// A direction choice on the base: a 1-form phi and a field v with
// i_v phi = 1 after construction. Both live on the base alone.
struct Slice {
  std::vector<Expr> phi;  // n components, functions of the x^i only
  std::vector<Expr> v;
  bool normalized = false;
};

// Validates and normalizes: checks base-only dependence, closedness of phi,
// nondegeneracy of i_v phi, then scales v by (i_v phi)^-1 and certifies
// i_v phi = 1. Raises DomainError when the data cannot form a slice.
Slice make_slice(const JetContext& ctx, std::vector<Expr> phi,
                 std::vector<Expr> v);

// dy^s - y^s_i dx^i
DiffForm contact_form(const JetContext& ctx, int s);

// Gamma_i = d/dx^i + y^s_i d/dy^s + F^s_ij d/dy^s_j
VectorField gamma_field(const Connection& c, int i);
std::vector<VectorField> gamma_fields(const Connection& c);
VectorField gamma_v(const Connection& c, const Slice& s);  // v^i Gamma_i
VectorValuedForm gamma_vvf(const Connection& c);           // dx^i (x) Gamma_i

// phi_i w^s (x) d/dy^s_i
VectorValuedForm s1_phi(const JetContext& ctx, const Slice& s);

// L_{Gamma_v} S1^phi, the operator whose eigenspaces split the tangent
// bundle. Computed as a componentwise Lie derivative and cross-checked
// against the bracket slice i_{Gamma_v}[[Gamma, S1^phi]]; a mismatch means
// corrupted inputs or a calculus bug and raises SymbolicError.
VectorValuedForm deformation(const Connection& c, const Slice& s);

// Table H^n_sk of the horizontal lift coefficients, (n = nu, s = sigma).
struct HTable {
  int n = 0, m = 0;
  std::vector<Expr> h;  // nu-major, then sigma, then k

  HTable() = default;
  HTable(int n_, int m_)
      : n(n_), m(m_), h(static_cast<std::size_t>(m_) * m_ * n_, make_num(0)) {}
  Expr& at(int nu, int sigma, int k) {
    return h[(static_cast<std::size_t>(nu) * m + sigma) * n + k];
  }
  const Expr& at(int nu, int sigma, int k) const {
    return h[(static_cast<std::size_t>(nu) * m + sigma) * n + k];
  }
};

// Solves the -1 eigenvalue problem for the deformation: returns H^n_sk such
// that H_s = d/dy^s + H^n_sk d/dy^n_k satisfies i_{H_s}(L_{Gamma_v}S1) = -H_s.
// With A^n_sk = v^i (phi_j dF^n_ik/dy^s_j - delta^n_s dphi_k/dx^i) the
// solution is H^n_sk = A^n_sk - (1/2) phi_k v^l A^n_sl. The eigen-equation
// is re-verified symbolically; failure raises SymbolicError.
HTable horizontal_coefficients(const Connection& c, const Slice& s);

// H_s as a vector field.
VectorField horizontal_lift(const JetContext& ctx, const HTable& H, int sigma);

// The adapted frame and coframe of the fourfold splitting, plus the five
// projectors. Frame order (and coframe order, dual row by row):
//
//   H_s (m)    | omega^s
//   Gamma_i(n) | dx^i
//   W^p_nu     | theta^nu_p = psi^nu_p - phi_p chi^nu   (p != anchor)
//   P_nu (m)   | chi^nu = v^k psi^nu_k
//
// with W^p_nu = d/dy^nu_p - (v^p/v^a) d/dy^nu_a, P_nu = phi_j d/dy^nu_j and
// psi^nu_k = dy^nu_k - F^nu_ki dx^i - H^nu_sk omega^s. The anchor a is a
// base index where v^a is known nonzero; construction verifies that the
// full pairing matrix is the identity and that the projectors resolve it.
struct SplitFrame {
  HTable H;
  int anchor = 0;

  std::vector<VectorField> h_fields;  // m
  std::vector<VectorField> gamma;     // n
  std::vector<VectorField> w_fields;  // m*(n-1), nu-major, p skipping anchor
  std::vector<VectorField> p_fields;  // m

  std::vector<DiffForm> omega;  // m
  std::vector<DiffForm> dx;     // n
  std::vector<DiffForm> theta;  // m*(n-1), matching w_fields order
  std::vector<DiffForm> chi;    // m
  std::vector<DiffForm> psi;    // m*n full table, nu-major over k

  VectorValuedForm proj_h;       // omega^s (x) H_s
  VectorValuedForm proj_gamma;   // dx^i (x) Gamma_i
  VectorValuedForm proj_v;       // psi^nu_k (x) d/dy^nu_k
  VectorValuedForm proj_vtilde;  // proj_v - proj_vplus
  VectorValuedForm proj_vplus;   // chi^nu (x) P_nu

  // Frame fields and coframe forms flattened in the order above.
  std::vector<VectorField> frame() const;
  std::vector<DiffForm> coframe() const;
};

SplitFrame build_split_frame(const Connection& c, const Slice& s,
                             bool verify = true);

// Numeric spectrum certificate of the deformation at one jet point:
// minimal polynomial L^3 = L with multiplicities (dim-2m, m, m).
MatrixCheckReport verify_eigensplitting(const Connection& c, const Slice& s,
                                        const JetPoint& p);

}  // namespace jetcurv

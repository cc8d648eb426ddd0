#pragma once

#include "jetcurv/connection.hpp"

#include <array>
#include <vector>

namespace jetcurv {

// The second order construction: instead of pairing the one-form phi with a
// transverse field, pull the annihilator of the equation submanifold back
// through the second order vertical endomorphism. The resulting coframe
// table psi^s_ij decides, one symmetry condition later, whether a splitting
// exists without ever choosing a vector field.

// Table of the pulled-back annihilator forms, symmetric in (i, j).
struct AnnihilatorForms {
  int n = 0, m = 0;
  std::vector<DiffForm> psi;  // s-major, upper triangular in (i, j)

  const DiffForm& at(int sigma, int i, int j) const;
};

// psi^s_ij = (1/2) n(ij) (dphi_i/dx^j + dphi_j/dx^i) w^s
//            - phi_k dF^s_ij/dy^n_k w^n + phi_i wbar^s_j + phi_j wbar^s_i
// with wbar^s_i = dy^s_i - F^s_ik dx^k and n(ij) the symmetry count.
AnnihilatorForms annihilator_forms(const Connection& c, const Slice& s);

// Index a with phi = dx^a (constant unit component, all others zero),
// or -1 when phi is not of that shape.
int adapted_axis(const JetContext& ctx, const std::vector<Expr>& phi);

// The obstruction to a vector-field-free splitting: every derivative
// dF^s_pq/dy^n_a with p, q away from the adapted axis must vanish.
struct CompatibilityReport {
  bool compatible = false;
  int axis = -1;
  // failing (sigma, nu, p, q) combinations
  std::vector<std::array<int, 4>> witnesses;
};

CompatibilityReport check_compatibility(const Connection& c, const Slice& s);

// Frame of the vector-field-free splitting. The lift coefficients come from
// the closed form H^n_sk = (1/2) n(ak) dF^n_ak/dy^s_a along the adapted
// axis a; construction verifies they agree with the first order route for
// the slice's own v, which is the content of the uniqueness theorem.
SplitFrame d_minus_frame(const Connection& c, const Slice& s);

// Symmetric metric on the base with a symbolic inverse. The inverse is
// computed by adjugate for n <= 4 and must be supplied beyond that.
struct BaseMetric {
  int n = 0;
  std::vector<Expr> g;     // row-major, symmetric
  std::vector<Expr> ginv;

  const Expr& lower(int i, int j) const { return g[static_cast<std::size_t>(i) * n + j]; }
  const Expr& upper(int i, int j) const { return ginv[static_cast<std::size_t>(i) * n + j]; }
};

BaseMetric make_base_metric(const JetContext& ctx, std::vector<Expr> entries);
BaseMetric make_base_metric(const JetContext& ctx, std::vector<Expr> entries,
                            std::vector<Expr> inverse_entries);

// Adjugate inverse of an n x n symmetric expression matrix, n <= 4. Raises
// DomainError when the determinant tests as zero.
std::vector<Expr> invert_symmetric(const std::vector<Expr>& entries, int n);

// When no compatible one-form exists a metric can stand in for the missing
// data: contract the annihilator table down to m + n forms and raise phi to
// v = g#(phi). Requires the normalization g#(phi, phi) = 1. The result is
// the first order splitting for that v, re-derived here and cross-checked
// against the closed-form metric displays on an adapted axis.
SplitFrame metric_reduction(const Connection& c, const std::vector<Expr>& phi,
                            const BaseMetric& g);

// Rewrites a system in linearly changed base coordinates so that a constant
// one-form becomes the first coordinate differential. The returned pair
// lives over the same context; the coordinate symbols keep their names but
// describe the new chart.
struct AdaptedChart {
  Connection connection;
  Slice slice;
  int axis = 0;  // the adapted axis in the new chart
};

AdaptedChart adapt_chart(const Connection& c, const Slice& s);

}  // namespace jetcurv

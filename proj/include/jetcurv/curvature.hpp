#pragma once

#include "jetcurv/connection.hpp"

#include <string>
#include <utility>
#include <vector>

namespace jetcurv {

// Curvature operators of the splitting. Where two expressions exist for the
// same operator (projector composition and a coordinate display) both are
// computed and compared; a mismatch raises SymbolicError rather than
// returning either value, since a silent convention drift would poison
// every report built on top.

// [[Gamma, Gamma]] = dx^i ^ dx^j (x) [Gamma_i, Gamma_j]
VectorValuedForm r_gamma(const Connection& c, const SplitFrame& fr);

// Phi = v o [[Gamma, h]], with components
//   Phi^n_isj = H^r_si H^n_rj + Gamma_i(H^n_sj) - H_s(F^n_ij)
// in the dx^i ^ omega^s (x) d/dy^n_j display.
VectorValuedForm jacobi_curvature(const Connection& c, const SplitFrame& fr);

// The vector field Phi_is = Phi^n_isj d/dy^n_j for one (i, s) pair.
VectorField jacobi_field(const Connection& c, const SplitFrame& fr, int i,
                         int sigma);

// R^H = v o [[h, h]] = omega^s ^ omega^r (x) [H_s, H_r]
VectorValuedForm r_h(const Connection& c, const SplitFrame& fr);

// r_+ = v_+ o [[Gamma, v~]], by projector composition.
VectorValuedForm r_plus_vertical(const Connection& c, const SplitFrame& fr);

// Splits a Vpi_{1,0}-valued form along the refined vertical sum:
// tilde = v~ o A, plus = v_+ o A, with tilde + plus = A exactly.
struct PlusTilde {
  VectorValuedForm tilde;
  VectorValuedForm plus;
};
PlusTilde decompose_plus_tilde(const SplitFrame& fr, const VectorValuedForm& A);

// v o [[Gamma, v]] + R^Gamma + Phi = 0
ComponentsZero check_theorem_vertical(const Connection& c, const SplitFrame& fr);

// v_+ o [[Gamma, v_+]] + R^Gamma_+ + Phi_+ + r_+ = 0
ComponentsZero check_theorem_refined(const Connection& c, const SplitFrame& fr);

// Every tabulated bracket identity: the six projector brackets
// ([[Gamma,Gamma]], [[Gamma,h]], [[Gamma,v]], [[h,h]], [[h,v]], [[v,v]])
// against their displays, and the five Lie bracket rows that feed them.
// Each entry pairs a row label with its residual status.
std::vector<std::pair<std::string, ComponentsZero>> check_bracket_table(
    const Connection& c, const SplitFrame& fr);

// One-stop structure for reports: every operator plus the identity checks.
struct CurvatureReport {
  VectorValuedForm r_gamma, r_h, phi;
  VectorValuedForm r_gamma_tilde, r_gamma_plus;
  VectorValuedForm phi_tilde, phi_plus;
  VectorValuedForm r_h_tilde, r_h_plus;
  VectorValuedForm r_plus;
  ComponentsZero vertical_identity;  // Theorem: v o [[Gamma,v]] + R^Gamma + Phi
  ComponentsZero refined_identity;   // Theorem: v+ o [[Gamma,v+]] + ... + r+
};

CurvatureReport curvature_report(const Connection& c, const SplitFrame& fr);

}  // namespace jetcurv

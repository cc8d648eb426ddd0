#pragma once

#include "jetcurv/curvature.hpp"
#include "jetcurv/secondorder.hpp"

#include <string>
#include <utility>
#include <vector>

namespace jetcurv {

// Worked geometric families: harmonic-map systems built from a pair of
// metrics, the separability test for decoupled systems, and the oscillating
// lemniscate system used as a running example throughout the test suite.

// Christoffel symbols and curvature tensor of a symmetric metric whose
// entries depend on one coordinate family (the base x^i or the fibre y^s).
struct RiemannData {
  int dim = 0;
  std::vector<int> dirs;      // frame directions of the coordinate family
  std::vector<Expr> g, ginv;  // dim x dim, row major

  // gamma[k][i][j] and R^l_kij = d_i gamma^l_jk - d_j gamma^l_ik
  //                              + gamma^l_im gamma^m_jk - gamma^l_jm gamma^m_ik
  std::vector<Expr> gamma;
  std::vector<Expr> riemann;

  const Expr& christoffel(int k, int i, int j) const {
    return gamma[(static_cast<std::size_t>(k) * dim + i) * dim + j];
  }
  const Expr& curvature(int l, int k, int i, int j) const {
    return riemann[((static_cast<std::size_t>(l) * dim + k) * dim + i) * dim + j];
  }
};

// Builds the symbols and tensor from explicit data over an arbitrary
// coordinate family, then certifies the classical identities: symmetry of
// the lower pair, antisymmetry of R in its derivative pair, the cyclic sum,
// and covariant constancy of g.
RiemannData riemann_data(const JetContext& ctx, std::vector<int> dirs,
                         std::vector<Expr> g, std::vector<Expr> ginv);

RiemannData christoffel(const JetContext& ctx, const BaseMetric& g);

// Same construction over the fibre coordinates; entries are functions of
// the y^s alone and the inverse comes from the adjugate (m <= 4).
RiemannData fibre_christoffel(const JetContext& ctx, std::vector<Expr> entries);

// F^p_ij = gamma^k_ij(x) y^p_k - gamma^p_sn(y) y^s_i y^n_j, the sufficient
// second order system for maps between the two geometries.
Connection harmonic_connection(const JetContext& ctx, const RiemannData& g,
                               const RiemannData& h);

// Computes the four curvature operators of the harmonic system and compares
// each against its closed form in the two curvature tensors. Requires the
// slice axis chart to satisfy g_aa = 1 and g_aq = 0 with v raised from phi,
// which is what makes the closed forms valid.
std::vector<std::pair<std::string, ComponentsZero>> harmonic_curvature_check(
    const JetContext& ctx, const RiemannData& g, const RiemannData& h,
    const Slice& s);

// Outcome of the separability analysis of a system that decouples equation
// by equation. The syntactic scan feeds `separable`; the curvature facts
// are computed for every directional slice either way, but they are only
// guaranteed when the scan passes.
struct SeparabilityReport {
  bool separable = false;
  std::vector<std::string> violations;  // offending dependencies

  bool r_h_zero = false;
  bool phi_diagonal = false;
  bool h_diagonal = false;
  bool displays_match = false;  // slice tables against their closed forms

  std::vector<HTable> slice_h;  // axis slice first, then one per direction

  bool pass() const {
    return separable && r_h_zero && phi_diagonal && h_diagonal &&
           displays_match;
  }
};

// Necessary conditions only: a separable system must have vanishing R^H and
// a diagonal Jacobi endomorphism on every directional slice. Nothing here
// claims the converse.
SeparabilityReport separability_check(const Connection& c);

// The oscillating lemniscate system r_tt = -r, r_tth = r_t r_th / r,
// r_thth = -2r - r_th^2 / r over base (t, th) and fibre r.
JetContext lemniscate_context();
Connection lemniscate_connection(const JetContext& ctx);

}  // namespace jetcurv

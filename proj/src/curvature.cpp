#include "jetcurv/curvature.hpp"

#include <string>
#include <utility>
#include <vector>

namespace jetcurv {

namespace {

void want_match(const VectorValuedForm& a, const VectorValuedForm& b,
                const char* what) {
  ComponentsZero r = components_zero((a - b).comp);
  if (!r.zero)
    throw SymbolicError(std::string(what) + " (component " +
                        std::to_string(r.failed_index) + " differs)");
}

// dx^i ^ dx^j (x) [Gamma_i, Gamma_j], summed over every ordered pair. The
// antisymmetry of the bracket makes this the doubled strict-pair sum, which
// is what the projector bracket produces.
VectorValuedForm gamma_pair_display(const Connection& c, const SplitFrame& fr) {
  const JetContext& ctx = c.ctx();
  VectorValuedForm out(ctx, 2);
  for (int i = 0; i < ctx.n(); ++i)
    for (int j = 0; j < ctx.n(); ++j) {
      if (i == j) continue;
      out = out + tensor(wedge(fr.dx[i], fr.dx[j]),
                         lie_bracket(ctx, fr.gamma[i], fr.gamma[j]));
    }
  return out;
}

VectorValuedForm h_pair_display(const Connection& c, const SplitFrame& fr) {
  const JetContext& ctx = c.ctx();
  VectorValuedForm out(ctx, 2);
  for (int s = 0; s < ctx.m(); ++s)
    for (int r = 0; r < ctx.m(); ++r) {
      if (s == r) continue;
      out = out + tensor(wedge(fr.omega[s], fr.omega[r]),
                         lie_bracket(ctx, fr.h_fields[s], fr.h_fields[r]));
    }
  return out;
}

// dx^i ^ psi^s_i (x) H_s
VectorValuedForm mixed_annihilator_display(const Connection& c,
                                           const SplitFrame& fr) {
  const JetContext& ctx = c.ctx();
  VectorValuedForm out(ctx, 2);
  for (int i = 0; i < ctx.n(); ++i)
    for (int s = 0; s < ctx.m(); ++s)
      out = out + tensor(wedge(fr.dx[i], fr.psi[s * ctx.n() + i]),
                         fr.h_fields[s]);
  return out;
}

VectorValuedForm phi_display(const Connection& c, const SplitFrame& fr) {
  const JetContext& ctx = c.ctx();
  VectorValuedForm out(ctx, 2);
  for (int i = 0; i < ctx.n(); ++i)
    for (int s = 0; s < ctx.m(); ++s)
      out = out + tensor(wedge(fr.dx[i], fr.omega[s]), jacobi_field(c, fr, i, s));
  return out;
}

}  // namespace

VectorValuedForm r_gamma(const Connection& c, const SplitFrame& fr) {
  VectorValuedForm G = gamma_vvf(c);
  VectorValuedForm out = fn_bracket(c.ctx(), G, G);
  want_match(out, gamma_pair_display(c, fr),
             "second order curvature disagrees with its display");
  return out;
}

VectorField jacobi_field(const Connection& c, const SplitFrame& fr, int i,
                         int sigma) {
  const JetContext& ctx = c.ctx();
  VectorField out(ctx);
  for (int nu = 0; nu < ctx.m(); ++nu)
    for (int j = 0; j < ctx.n(); ++j) {
      std::vector<Expr> parts;
      for (int rho = 0; rho < ctx.m(); ++rho)
        parts.push_back(mul({fr.H.at(rho, sigma, i), fr.H.at(nu, rho, j)}));
      parts.push_back(directional(ctx, fr.gamma[i], fr.H.at(nu, sigma, j)));
      parts.push_back(
          make_num(-1) * directional(ctx, fr.h_fields[sigma], c.at(nu, i, j)));
      out.comp[ctx.dir_jet(nu, j)] = add(std::move(parts));
    }
  return out;
}

VectorValuedForm jacobi_curvature(const Connection& c, const SplitFrame& fr) {
  VectorValuedForm out =
      vvf_compose(fr.proj_v, fn_bracket(c.ctx(), gamma_vvf(c), fr.proj_h));
  want_match(out, phi_display(c, fr),
             "Jacobi curvature disagrees with its component formula");
  return out;
}

VectorValuedForm r_h(const Connection& c, const SplitFrame& fr) {
  VectorValuedForm out =
      vvf_compose(fr.proj_v, fn_bracket(c.ctx(), fr.proj_h, fr.proj_h));
  want_match(out, h_pair_display(c, fr),
             "horizontal curvature disagrees with its display");
  return out;
}

VectorValuedForm r_plus_vertical(const Connection& c, const SplitFrame& fr) {
  return vvf_compose(fr.proj_vplus,
                     fn_bracket(c.ctx(), gamma_vvf(c), fr.proj_vtilde));
}

PlusTilde decompose_plus_tilde(const SplitFrame& fr, const VectorValuedForm& A) {
  PlusTilde out{vvf_compose(fr.proj_vtilde, A), vvf_compose(fr.proj_vplus, A)};
  ComponentsZero whole = components_zero((out.tilde + out.plus - A).comp);
  if (!whole.zero)
    throw DomainError("decomposition input does not take vertical values",
                      "decompose_plus_tilde");
  return out;
}

ComponentsZero check_theorem_vertical(const Connection& c, const SplitFrame& fr) {
  const JetContext& ctx = c.ctx();
  VectorValuedForm G = gamma_vvf(c);
  VectorValuedForm lhs = vvf_compose(fr.proj_v, fn_bracket(ctx, G, fr.proj_v)) +
                         r_gamma(c, fr) + jacobi_curvature(c, fr);
  return components_zero(lhs.comp);
}

ComponentsZero check_theorem_refined(const Connection& c, const SplitFrame& fr) {
  const JetContext& ctx = c.ctx();
  VectorValuedForm G = gamma_vvf(c);
  VectorValuedForm lhs =
      vvf_compose(fr.proj_vplus, fn_bracket(ctx, G, fr.proj_vplus)) +
      decompose_plus_tilde(fr, r_gamma(c, fr)).plus +
      decompose_plus_tilde(fr, jacobi_curvature(c, fr)).plus +
      r_plus_vertical(c, fr);
  return components_zero(lhs.comp);
}

std::vector<std::pair<std::string, ComponentsZero>> check_bracket_table(
    const Connection& c, const SplitFrame& fr) {
  const JetContext& ctx = c.ctx();
  const int n = ctx.n();
  const int m = ctx.m();
  std::vector<std::pair<std::string, ComponentsZero>> rows;

  VectorValuedForm G = gamma_vvf(c);
  VectorValuedForm phi = phi_display(c, fr);
  VectorValuedForm gg = gamma_pair_display(c, fr);
  VectorValuedForm hh = h_pair_display(c, fr);
  VectorValuedForm mixed = mixed_annihilator_display(c, fr);

  auto push = [&](const char* label, const VectorValuedForm& residual) {
    rows.emplace_back(label, components_zero(residual.comp));
  };

  push("[[Gamma,Gamma]]", fn_bracket(ctx, G, G) - gg);
  push("[[Gamma,h]]", fn_bracket(ctx, G, fr.proj_h) - phi - mixed);
  push("[[Gamma,v]]", fn_bracket(ctx, G, fr.proj_v) + phi + mixed + gg);
  push("[[h,h]]", fn_bracket(ctx, fr.proj_h, fr.proj_h) - hh +
                      make_num(2) * mixed);
  push("[[h,v]]", fn_bracket(ctx, fr.proj_h, fr.proj_v) + phi + hh - mixed);
  push("[[v,v]]", fn_bracket(ctx, fr.proj_v, fr.proj_v) - make_num(2) * phi -
                      gg - hh);

  {  // [Gamma_i, Gamma_j] against its coefficient table
    std::vector<Expr> res;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        VectorField want(ctx);
        for (int nu = 0; nu < m; ++nu)
          for (int k = 0; k < n; ++k)
            want.comp[ctx.dir_jet(nu, k)] =
                directional(ctx, fr.gamma[i], c.at(nu, j, k)) -
                directional(ctx, fr.gamma[j], c.at(nu, i, k));
        VectorField got = lie_bracket(ctx, fr.gamma[i], fr.gamma[j]);
        for (const Expr& e : (got - want).comp) res.push_back(e);
      }
    rows.emplace_back("[Gamma_i,Gamma_j]", components_zero(res));
  }

  {  // [H_s, H_r]
    std::vector<Expr> res;
    for (int s = 0; s < m; ++s)
      for (int r = s + 1; r < m; ++r) {
        VectorField want(ctx);
        for (int rho = 0; rho < m; ++rho)
          for (int k = 0; k < n; ++k)
            want.comp[ctx.dir_jet(rho, k)] =
                directional(ctx, fr.h_fields[s], fr.H.at(rho, r, k)) -
                directional(ctx, fr.h_fields[r], fr.H.at(rho, s, k));
        VectorField got = lie_bracket(ctx, fr.h_fields[s], fr.h_fields[r]);
        for (const Expr& e : (got - want).comp) res.push_back(e);
      }
    rows.emplace_back("[H_s,H_r]", components_zero(res));
  }

  {  // [Gamma_i, H_s] = -H^n_si H_n + Phi_is
    std::vector<Expr> res;
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < m; ++s) {
        VectorField want = jacobi_field(c, fr, i, s);
        for (int nu = 0; nu < m; ++nu)
          want = want + (make_num(-1) * fr.H.at(nu, s, i)) * fr.h_fields[nu];
        VectorField got = lie_bracket(ctx, fr.gamma[i], fr.h_fields[s]);
        for (const Expr& e : (got - want).comp) res.push_back(e);
      }
    rows.emplace_back("[Gamma_i,H_s]", components_zero(res));
  }

  {  // [Gamma_i, d/dy^s_j]
    std::vector<Expr> res;
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < m; ++s)
        for (int j = 0; j < n; ++j) {
          VectorField want(ctx);
          if (i == j) want = want + make_num(-1) * fr.h_fields[s];
          for (int nu = 0; nu < m; ++nu)
            for (int k = 0; k < n; ++k) {
              Expr coeff = make_num(-1) * ctx.d(c.at(nu, i, k), ctx.dir_jet(s, j));
              if (i == j) coeff = coeff + fr.H.at(nu, s, k);
              want.comp[ctx.dir_jet(nu, k)] =
                  want.comp[ctx.dir_jet(nu, k)] + coeff;
            }
          VectorField got = lie_bracket(
              ctx, fr.gamma[i], frame_field(ctx, ctx.dir_jet(s, j)));
          for (const Expr& e : (got - want).comp) res.push_back(e);
        }
    rows.emplace_back("[Gamma_i,d/dy^s_j]", components_zero(res));
  }

  {  // [H_s, d/dy^n_j]
    std::vector<Expr> res;
    for (int s = 0; s < m; ++s)
      for (int nu = 0; nu < m; ++nu)
        for (int j = 0; j < n; ++j) {
          VectorField want(ctx);
          for (int rho = 0; rho < m; ++rho)
            for (int k = 0; k < n; ++k)
              want.comp[ctx.dir_jet(rho, k)] =
                  make_num(-1) * ctx.d(fr.H.at(rho, s, k), ctx.dir_jet(nu, j));
          VectorField got = lie_bracket(ctx, fr.h_fields[s],
                                        frame_field(ctx, ctx.dir_jet(nu, j)));
          for (const Expr& e : (got - want).comp) res.push_back(e);
        }
    rows.emplace_back("[H_s,d/dy^n_j]", components_zero(res));
  }

  return rows;
}

CurvatureReport curvature_report(const Connection& c, const SplitFrame& fr) {
  CurvatureReport rep;
  rep.r_gamma = r_gamma(c, fr);
  rep.r_h = r_h(c, fr);
  rep.phi = jacobi_curvature(c, fr);
  PlusTilde g2 = decompose_plus_tilde(fr, rep.r_gamma);
  rep.r_gamma_tilde = g2.tilde;
  rep.r_gamma_plus = g2.plus;
  PlusTilde p2 = decompose_plus_tilde(fr, rep.phi);
  rep.phi_tilde = p2.tilde;
  rep.phi_plus = p2.plus;
  PlusTilde h2 = decompose_plus_tilde(fr, rep.r_h);
  rep.r_h_tilde = h2.tilde;
  rep.r_h_plus = h2.plus;
  rep.r_plus = r_plus_vertical(c, fr);
  rep.vertical_identity = check_theorem_vertical(c, fr);
  rep.refined_identity = check_theorem_refined(c, fr);
  return rep;
}

}  // namespace jetcurv

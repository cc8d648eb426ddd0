#include "jetcurv/applications.hpp"

#include "jetcurv/zero_test.hpp"

#include <utility>

namespace jetcurv {

namespace {

void want_zero(const Expr& e, const char* what, const char* subject) {
  if (!is_zero(e).zero) throw DomainError(what, subject);
}

std::string entry_name(const JetContext& ctx, int s, int i, int j) {
  return "F[" + ctx.dir_name(ctx.dir_y(s)) + "][" + ctx.dir_name(ctx.dir_x(i)) +
         "][" + ctx.dir_name(ctx.dir_x(j)) + "]";
}

}  // namespace

RiemannData riemann_data(const JetContext& ctx, std::vector<int> dirs,
                         std::vector<Expr> g, std::vector<Expr> ginv) {
  const int d = static_cast<int>(dirs.size());
  if (static_cast<int>(g.size()) != d * d ||
      static_cast<int>(ginv.size()) != d * d)
    throw DomainError("metric data needs dim*dim entries", "metric");

  // Entries may involve the listed coordinates and parameters, nothing else.
  auto check_family = [&](const std::vector<Expr>& entries) {
    for (const Expr& e : entries)
      for (SymbolId id : free_symbols(e)) {
        if (ctx.symbols().role(id) == SymbolRole::Parameter) continue;
        bool listed = false;
        for (int dir : dirs) listed = listed || ctx.dir_symbol(dir) == id;
        if (!listed)
          throw DomainError("metric entry depends on '" +
                                ctx.symbols().name(id) +
                                "' outside its coordinate family",
                            "metric");
      }
  };
  check_family(g);
  check_family(ginv);

  RiemannData out;
  out.dim = d;
  out.dirs = std::move(dirs);
  out.g = std::move(g);
  out.ginv = std::move(ginv);

  auto lower = [&](int i, int j) -> const Expr& {
    return out.g[static_cast<std::size_t>(i) * d + j];
  };
  auto upper = [&](int i, int j) -> const Expr& {
    return out.ginv[static_cast<std::size_t>(i) * d + j];
  };

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (j > i)
        want_zero(lower(i, j) - lower(j, i), "metric is not symmetric",
                  "metric");
      std::vector<Expr> parts;
      for (int k = 0; k < d; ++k) parts.push_back(mul({lower(i, k), upper(k, j)}));
      want_zero(add(std::move(parts)) - make_num(i == j ? 1 : 0),
                "metric inverse fails g * ginv = id", "metric");
    }

  out.gamma.resize(static_cast<std::size_t>(d) * d * d, make_num(0));
  auto gm = [&](int k, int i, int j) -> Expr& {
    return out.gamma[(static_cast<std::size_t>(k) * d + i) * d + j];
  };
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        std::vector<Expr> parts;
        for (int l = 0; l < d; ++l)
          parts.push_back(mul(
              {make_num(1, 2), upper(k, l),
               ctx.d(lower(l, i), out.dirs[j]) + ctx.d(lower(l, j), out.dirs[i]) -
                   ctx.d(lower(i, j), out.dirs[l])}));
        gm(k, i, j) = add(std::move(parts));
        if (j > i) gm(k, j, i) = gm(k, i, j);
      }

  out.riemann.resize(static_cast<std::size_t>(d) * d * d * d, make_num(0));
  auto rm = [&](int l, int k, int i, int j) -> Expr& {
    return out.riemann[((static_cast<std::size_t>(l) * d + k) * d + i) * d + j];
  };
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          std::vector<Expr> parts{ctx.d(gm(l, j, k), out.dirs[i]),
                                  make_num(-1) * ctx.d(gm(l, i, k), out.dirs[j])};
          for (int m = 0; m < d; ++m) {
            parts.push_back(mul({gm(l, i, m), gm(m, j, k)}));
            parts.push_back(make_num(-1) * mul({gm(l, j, m), gm(m, i, k)}));
          }
          rm(l, k, i, j) = add(std::move(parts));
        }

  // The construction is certified by the classical identities: the cyclic
  // sum over the three lower indices and covariant constancy of the metric.
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (!is_zero(rm(l, k, i, j) + rm(l, i, j, k) + rm(l, j, k, i)).zero)
            throw SymbolicError("curvature tensor fails the cyclic identity");
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Expr res = ctx.d(lower(i, j), out.dirs[k]);
        for (int l = 0; l < d; ++l) {
          res = res - gm(l, k, i) * lower(l, j);
          res = res - gm(l, k, j) * lower(i, l);
        }
        if (!is_zero(res).zero)
          throw SymbolicError("Christoffel symbols are not metric compatible");
      }
  return out;
}

RiemannData christoffel(const JetContext& ctx, const BaseMetric& g) {
  std::vector<int> dirs;
  for (int i = 0; i < ctx.n(); ++i) dirs.push_back(ctx.dir_x(i));
  return riemann_data(ctx, std::move(dirs), g.g, g.ginv);
}

RiemannData fibre_christoffel(const JetContext& ctx, std::vector<Expr> entries) {
  if (static_cast<int>(entries.size()) != ctx.m() * ctx.m())
    throw DomainError("fibre metric needs m*m entries", "metric");
  std::vector<Expr> inverse = invert_symmetric(entries, ctx.m());
  std::vector<int> dirs;
  for (int s = 0; s < ctx.m(); ++s) dirs.push_back(ctx.dir_y(s));
  return riemann_data(ctx, std::move(dirs), std::move(entries),
                      std::move(inverse));
}

Connection harmonic_connection(const JetContext& ctx, const RiemannData& g,
                               const RiemannData& h) {
  if (g.dim != ctx.n() || g.dirs != [&] {
        std::vector<int> want;
        for (int i = 0; i < ctx.n(); ++i) want.push_back(ctx.dir_x(i));
        return want;
      }())
    throw DomainError("g must live on the base coordinates", "metric");
  if (h.dim != ctx.m() || h.dirs != [&] {
        std::vector<int> want;
        for (int s = 0; s < ctx.m(); ++s) want.push_back(ctx.dir_y(s));
        return want;
      }())
    throw DomainError("h must live on the fibre coordinates", "metric");

  Connection c(ctx);
  for (int rho = 0; rho < ctx.m(); ++rho)
    for (int i = 0; i < ctx.n(); ++i)
      for (int j = i; j < ctx.n(); ++j) {
        std::vector<Expr> parts;
        for (int k = 0; k < ctx.n(); ++k)
          parts.push_back(mul({g.christoffel(k, i, j), ctx.jet(rho, k)}));
        for (int sig = 0; sig < ctx.m(); ++sig)
          for (int nu = 0; nu < ctx.m(); ++nu)
            parts.push_back(make_num(-1) * mul({h.christoffel(rho, sig, nu),
                                                ctx.jet(sig, i), ctx.jet(nu, j)}));
        c.set(rho, i, j, add(std::move(parts)));
      }
  return c;
}

std::vector<std::pair<std::string, ComponentsZero>> harmonic_curvature_check(
    const JetContext& ctx, const RiemannData& g, const RiemannData& h,
    const Slice& s) {
  const int n = ctx.n(), m = ctx.m();
  const int a = adapted_axis(ctx, s.phi);
  if (a < 0)
    throw DomainError("the closed curvature forms need phi = dx^a", "phi");

  // The chart assumptions behind the closed forms: unit length along the
  // axis, no mixed axis components, and v raised from phi (so v = d/dx^a).
  auto glo = [&](int i, int j) -> const Expr& {
    return g.g[static_cast<std::size_t>(i) * n + j];
  };
  want_zero(glo(a, a) - make_num(1), "chart condition g[a][a] = 1 fails",
            "metric");
  for (int q = 0; q < n; ++q)
    if (q != a)
      want_zero(glo(a, q), "chart condition g[a][q] = 0 fails", "metric");
  for (int i = 0; i < n; ++i)
    want_zero(s.v[i] - make_num(i == a ? 1 : 0),
              "slice field must be phi with the index raised", "slice");

  Connection c = harmonic_connection(ctx, g, h);
  SplitFrame fr = build_split_frame(c, s);

  std::vector<std::pair<std::string, ComponentsZero>> rows;
  auto push = [&](const char* label, const VectorValuedForm& got,
                  const VectorValuedForm& want) {
    rows.emplace_back(label, components_zero((got - want).comp));
  };

  // Lift coefficients collapse to the fibre symbols alone.
  {
    std::vector<Expr> res;
    for (int rho = 0; rho < m; ++rho)
      for (int sig = 0; sig < m; ++sig)
        for (int k = 0; k < n; ++k) {
          Expr want = make_num(0);
          for (int nu = 0; nu < m; ++nu)
            want = want - h.christoffel(rho, sig, nu) * ctx.jet(nu, k);
          res.push_back(fr.H.at(rho, sig, k) - want);
        }
    rows.emplace_back("H", components_zero(res));
  }

  {
    VectorValuedForm want(ctx, 2);
    for (int nu = 0; nu < m; ++nu)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            std::vector<Expr> parts;
            for (int l = 0; l < n; ++l)
              parts.push_back(mul({g.curvature(l, k, i, j), ctx.jet(nu, l)}));
            for (int sig = 0; sig < m; ++sig)
              for (int mu = 0; mu < m; ++mu)
                for (int rho = 0; rho < m; ++rho)
                  parts.push_back(mul({h.curvature(nu, rho, mu, sig),
                                       ctx.jet(sig, i), ctx.jet(mu, j),
                                       ctx.jet(rho, k)}));
            add_term2(want, ctx.dir_jet(nu, k), ctx.dir_x(i), ctx.dir_x(j),
                      add(std::move(parts)));
          }
    push("R_Gamma", r_gamma(c, fr), want);
  }

  {
    VectorValuedForm want(ctx, 2);
    for (int sig = 0; sig < m; ++sig)
      for (int rho = 0; rho < m; ++rho) {
        VectorField val(ctx);
        for (int nu = 0; nu < m; ++nu)
          for (int k = 0; k < n; ++k) {
            std::vector<Expr> parts;
            for (int mu = 0; mu < m; ++mu)
              parts.push_back(
                  mul({h.curvature(nu, mu, rho, sig), ctx.jet(mu, k)}));
            val.comp[ctx.dir_jet(nu, k)] = add(std::move(parts));
          }
        want = want + tensor(wedge(fr.omega[sig], fr.omega[rho]), val);
      }
    push("R_H", r_h(c, fr), want);
  }

  {
    VectorValuedForm want(ctx, 2);
    for (int i = 0; i < n; ++i)
      for (int nu = 0; nu < m; ++nu) {
        VectorField val(ctx);
        for (int rho = 0; rho < m; ++rho)
          for (int k = 0; k < n; ++k) {
            std::vector<Expr> parts;
            for (int sig = 0; sig < m; ++sig)
              for (int mu = 0; mu < m; ++mu)
                parts.push_back(mul({h.curvature(rho, mu, nu, sig),
                                     ctx.jet(sig, i), ctx.jet(mu, k)}));
            val.comp[ctx.dir_jet(rho, k)] = add(std::move(parts));
          }
        want = want + tensor(wedge(fr.dx[i], fr.omega[nu]), val);
      }
    push("Phi", jacobi_curvature(c, fr), want);
  }

  {
    VectorValuedForm want(ctx, 2);
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < n; ++p) {
        if (p == a) continue;
        for (int nu = 0; nu < m; ++nu)
          want = want + (make_num(-1) * g.christoffel(p, i, a)) *
                            tensor(wedge(coframe_form(ctx, ctx.dir_x(i)),
                                         fr.psi[static_cast<std::size_t>(nu) * n + p]),
                                   frame_field(ctx, ctx.dir_jet(nu, a)));
      }
    push("r_plus", r_plus_vertical(c, fr), want);
  }

  return rows;
}

SeparabilityReport separability_check(const Connection& c) {
  const JetContext& ctx = c.ctx();
  const int n = ctx.n(), m = ctx.m();

  SeparabilityReport rep;
  for (int sig = 0; sig < m; ++sig)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const Expr& e = c.at(sig, i, j);
        auto offends = [&](int dir) {
          if (is_zero(ctx.d(e, dir)).zero) return;
          rep.violations.push_back(entry_name(ctx, sig, i, j) + " depends on " +
                                   ctx.dir_name(dir));
        };
        for (int k = 0; k < n; ++k) offends(ctx.dir_x(k));
        for (int nu = 0; nu < m; ++nu) {
          if (nu == sig) continue;
          offends(ctx.dir_y(nu));
          for (int k = 0; k < n; ++k) offends(ctx.dir_jet(nu, k));
        }
      }
  rep.separable = rep.violations.empty();

  // Directional slices: the axis field alone, then axis plus one other
  // direction. Everything below is computed whether or not the scan passed;
  // the booleans are only promised to hold when it did.
  std::vector<Expr> phi(static_cast<std::size_t>(n), make_num(0));
  phi[0] = make_num(1);
  std::vector<std::vector<Expr>> vs;
  vs.push_back(phi);
  for (int p = 1; p < n; ++p) {
    std::vector<Expr> v = phi;
    v[static_cast<std::size_t>(p)] = make_num(1);
    vs.push_back(std::move(v));
  }

  rep.r_h_zero = true;
  rep.phi_diagonal = true;
  rep.h_diagonal = true;
  rep.displays_match = true;
  for (std::size_t sl = 0; sl < vs.size(); ++sl) {
    SplitFrame fr = build_split_frame(c, make_slice(ctx, phi, vs[sl]));
    rep.r_h_zero = rep.r_h_zero && components_zero(r_h(c, fr).comp).zero;

    for (int i = 0; i < n; ++i)
      for (int sig = 0; sig < m; ++sig) {
        VectorField f = jacobi_field(c, fr, i, sig);
        for (int nu = 0; nu < m; ++nu) {
          if (nu == sig) continue;
          for (int k = 0; k < n; ++k)
            rep.phi_diagonal =
                rep.phi_diagonal && is_zero(f.comp[ctx.dir_jet(nu, k)]).zero;
        }
      }

    for (int nu = 0; nu < m; ++nu)
      for (int sig = 0; sig < m; ++sig)
        for (int k = 0; k < n; ++k)
          if (nu != sig)
            rep.h_diagonal =
                rep.h_diagonal && is_zero(fr.H.at(nu, sig, k)).zero;

    // Diagonal entries against their closed forms for this slice choice.
    const int p = static_cast<int>(sl);  // 0 means the axis slice
    for (int sig = 0; sig < m; ++sig) {
      Expr axis_want = make_num(1, 2) * ctx.d(c.at(sig, 0, 0), ctx.dir_jet(sig, 0));
      if (p > 0)
        axis_want = axis_want - make_num(1, 2) * ctx.d(c.at(sig, p, p),
                                                       ctx.dir_jet(sig, 0));
      rep.displays_match =
          rep.displays_match &&
          is_zero(fr.H.at(sig, sig, 0) - axis_want).zero;
      for (int q = 1; q < n; ++q) {
        Expr want = ctx.d(c.at(sig, 0, q), ctx.dir_jet(sig, 0));
        if (p > 0) want = want + ctx.d(c.at(sig, p, q), ctx.dir_jet(sig, 0));
        rep.displays_match =
            rep.displays_match && is_zero(fr.H.at(sig, sig, q) - want).zero;
      }
    }

    rep.slice_h.push_back(fr.H);
  }
  return rep;
}

JetContext lemniscate_context() { return JetContext({"t", "th"}, {"r"}); }

Connection lemniscate_connection(const JetContext& ctx) {
  if (ctx.n() != 2 || ctx.m() != 1)
    throw DomainError("the lemniscate system needs a 2 + 1 context", "context");
  Connection c(ctx);
  Expr r = ctx.y(0), rt = ctx.jet(0, 0), rth = ctx.jet(0, 1);
  c.set(0, 0, 0, make_num(-1) * r);
  c.set(0, 0, 1, rt * rth / r);
  c.set(0, 1, 1, make_num(-2) * r - rth * rth / r);
  return c;
}

}  // namespace jetcurv

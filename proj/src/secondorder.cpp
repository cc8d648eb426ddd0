#include "jetcurv/secondorder.hpp"

#include "jetcurv/zero_test.hpp"

#include <string>
#include <utility>

namespace jetcurv {

namespace {

int tri_index(int i, int j, int n) { return i * n - i * (i - 1) / 2 + (j - i); }

// dy^s_i - F^s_ik dx^k, the vertical remainder of the jet coordinate.
DiffForm jet_remainder(const Connection& c, int s, int i) {
  const JetContext& ctx = c.ctx();
  DiffForm w = coframe_form(ctx, ctx.dir_jet(s, i));
  for (int k = 0; k < ctx.n(); ++k)
    w.comp[ctx.dir_x(k)] = make_num(-1) * c.at(s, i, k);
  return w;
}

std::string entry_name(const JetContext& ctx, int s, int i, int j) {
  return "F[" + ctx.dir_name(ctx.dir_y(s)) + "][" + ctx.dir_name(ctx.dir_x(i)) +
         "][" + ctx.dir_name(ctx.dir_x(j)) + "]";
}

}  // namespace

const DiffForm& AnnihilatorForms::at(int sigma, int i, int j) const {
  if (i > j) std::swap(i, j);
  return psi[static_cast<std::size_t>(sigma) * (n * (n + 1) / 2) +
             tri_index(i, j, n)];
}

AnnihilatorForms annihilator_forms(const Connection& c, const Slice& s) {
  const JetContext& ctx = c.ctx();
  const int n = ctx.n(), m = ctx.m();

  std::vector<DiffForm> omega, wbar;
  for (int nu = 0; nu < m; ++nu) omega.push_back(contact_form(ctx, nu));
  for (int sig = 0; sig < m; ++sig)
    for (int k = 0; k < n; ++k) wbar.push_back(jet_remainder(c, sig, k));

  AnnihilatorForms out;
  out.n = n;
  out.m = m;
  out.psi.reserve(static_cast<std::size_t>(m) * n * (n + 1) / 2);
  for (int sig = 0; sig < m; ++sig)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Expr dphi = ctx.d(s.phi[i], ctx.dir_x(j)) + ctx.d(s.phi[j], ctx.dir_x(i));
        if (i == j) dphi = make_num(1, 2) * dphi;
        DiffForm p = dphi * omega[sig];
        for (int nu = 0; nu < m; ++nu) {
          std::vector<Expr> parts;
          for (int k = 0; k < n; ++k)
            parts.push_back(mul({s.phi[k], ctx.d(c.at(sig, i, j), ctx.dir_jet(nu, k))}));
          p = p - add(std::move(parts)) * omega[nu];
        }
        p = p + s.phi[i] * wbar[static_cast<std::size_t>(sig) * n + j] +
            s.phi[j] * wbar[static_cast<std::size_t>(sig) * n + i];
        out.psi.push_back(std::move(p));
      }
  return out;
}

int adapted_axis(const JetContext& ctx, const std::vector<Expr>& phi) {
  int axis = -1;
  for (int i = 0; i < ctx.n(); ++i) {
    if (is_zero(phi[i]).zero) continue;
    if (axis >= 0 || !is_zero(phi[i] - make_num(1)).zero) return -1;
    axis = i;
  }
  return axis;
}

CompatibilityReport check_compatibility(const Connection& c, const Slice& s) {
  const JetContext& ctx = c.ctx();
  const int a = adapted_axis(ctx, s.phi);
  if (a < 0)
    throw DomainError(
        "compatibility is decided in a chart with phi = dx^a; "
        "change coordinates first (adapt_chart handles constant phi)",
        "phi");

  CompatibilityReport rep;
  rep.axis = a;
  for (int sig = 0; sig < ctx.m(); ++sig)
    for (int p = 0; p < ctx.n(); ++p) {
      if (p == a) continue;
      for (int q = p; q < ctx.n(); ++q) {
        if (q == a) continue;
        for (int nu = 0; nu < ctx.m(); ++nu)
          if (!is_zero(ctx.d(c.at(sig, p, q), ctx.dir_jet(nu, a))).zero)
            rep.witnesses.push_back({sig, nu, p, q});
      }
    }
  rep.compatible = rep.witnesses.empty();
  return rep;
}

SplitFrame d_minus_frame(const Connection& c, const Slice& s) {
  const JetContext& ctx = c.ctx();
  CompatibilityReport rep = check_compatibility(c, s);
  if (!rep.compatible) {
    const auto& w = rep.witnesses.front();
    throw DomainError("no splitting without a field choice: " +
                          entry_name(ctx, w[0], w[2], w[3]) + " depends on " +
                          ctx.dir_name(ctx.dir_jet(w[1], rep.axis)) + " (" +
                          std::to_string(rep.witnesses.size()) +
                          " obstruction entries)",
                      "compatibility");
  }
  const int a = rep.axis;

  // The closed form of the lift: half the derivative along the repeated
  // axis, whole otherwise.
  HTable closed(ctx.n(), ctx.m());
  for (int nu = 0; nu < ctx.m(); ++nu)
    for (int sig = 0; sig < ctx.m(); ++sig)
      for (int k = 0; k < ctx.n(); ++k) {
        Expr h = ctx.d(c.at(nu, a, k), ctx.dir_jet(sig, a));
        closed.at(nu, sig, k) = k == a ? make_num(1, 2) * h : std::move(h);
      }

  SplitFrame fr = build_split_frame(c, s);
  for (int nu = 0; nu < ctx.m(); ++nu)
    for (int sig = 0; sig < ctx.m(); ++sig)
      for (int k = 0; k < ctx.n(); ++k)
        if (!is_zero(closed.at(nu, sig, k) - fr.H.at(nu, sig, k)).zero)
          throw SymbolicError("closed-form lift disagrees with the first order "
                              "route at H[" + std::to_string(nu) + "][" +
                              std::to_string(sig) + "][" + std::to_string(k) + "]");
  return fr;
}

namespace {

// Laplace expansion over the given row/column subset; fine for n <= 4.
Expr subset_det(const std::vector<Expr>& a, int n, std::vector<int> rows,
                std::vector<int> cols) {
  const std::size_t k = rows.size();
  if (k == 1) return a[static_cast<std::size_t>(rows[0]) * n + cols[0]];
  std::vector<Expr> terms;
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<int> sub_cols;
    for (std::size_t d = 0; d < k; ++d)
      if (d != c) sub_cols.push_back(cols[d]);
    Expr term = mul({a[static_cast<std::size_t>(rows[0]) * n + cols[c]],
                     subset_det(a, n, sub_rows, sub_cols)});
    terms.push_back(c % 2 ? make_num(-1) * term : term);
  }
  return add(std::move(terms));
}

void verify_inverse(const BaseMetric& g) {
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      std::vector<Expr> parts;
      for (int k = 0; k < g.n; ++k)
        parts.push_back(mul({g.lower(i, k), g.upper(k, j)}));
      Expr want = make_num(i == j ? 1 : 0);
      if (!is_zero(add(std::move(parts)) - want).zero)
        throw DomainError("metric inverse fails g * ginv = id at [" +
                              std::to_string(i) + "][" + std::to_string(j) + "]",
                          "metric");
    }
}

void check_metric_entries(const JetContext& ctx, const std::vector<Expr>& g,
                          int n) {
  if (static_cast<int>(g.size()) != n * n)
    throw DomainError("metric needs n*n entries", "metric");
  for (const Expr& e : g)
    for (SymbolId id : free_symbols(e)) {
      SymbolRole role = ctx.symbols().role(id);
      if (role != SymbolRole::BaseCoord && role != SymbolRole::Parameter)
        throw DomainError("metric entries must depend on base coordinates "
                          "only, found '" + ctx.symbols().name(id) + "'",
                          "metric");
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!is_zero(g[static_cast<std::size_t>(i) * n + j] -
                   g[static_cast<std::size_t>(j) * n + i]).zero)
        throw DomainError("metric is not symmetric at [" + std::to_string(i) +
                              "][" + std::to_string(j) + "]",
                          "metric");
}

}  // namespace

std::vector<Expr> invert_symmetric(const std::vector<Expr>& entries, int n) {
  if (n > 4)
    throw DomainError("adjugate inversion is limited to n <= 4", "metric");
  std::vector<int> all;
  for (int i = 0; i < n; ++i) all.push_back(i);
  Expr det = subset_det(entries, n, all, all);
  if (is_zero(det).zero)
    throw DomainError("matrix is singular, determinant tests as zero", "metric");
  Expr inv_det = powi(det, -1);

  std::vector<Expr> out(static_cast<std::size_t>(n) * n, make_num(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> rows, cols;
      for (int k = 0; k < n; ++k) {
        if (k != j) rows.push_back(k);  // transposed cofactor
        if (k != i) cols.push_back(k);
      }
      Expr cof = n == 1 ? make_num(1) : subset_det(entries, n, rows, cols);
      if ((i + j) % 2) cof = make_num(-1) * cof;
      out[static_cast<std::size_t>(i) * n + j] = mul({cof, inv_det});
    }
  return out;
}

BaseMetric make_base_metric(const JetContext& ctx, std::vector<Expr> entries) {
  const int n = ctx.n();
  check_metric_entries(ctx, entries, n);
  if (n > 4)
    throw DomainError("supply the inverse explicitly for n > 4", "metric");

  BaseMetric out;
  out.n = n;
  out.ginv = invert_symmetric(entries, n);
  out.g = std::move(entries);
  verify_inverse(out);
  return out;
}

BaseMetric make_base_metric(const JetContext& ctx, std::vector<Expr> entries,
                            std::vector<Expr> inverse_entries) {
  const int n = ctx.n();
  check_metric_entries(ctx, entries, n);
  check_metric_entries(ctx, inverse_entries, n);
  BaseMetric out;
  out.n = n;
  out.g = std::move(entries);
  out.ginv = std::move(inverse_entries);
  verify_inverse(out);
  return out;
}

SplitFrame metric_reduction(const Connection& c, const std::vector<Expr>& phi,
                            const BaseMetric& g) {
  const JetContext& ctx = c.ctx();
  const int n = ctx.n();
  if (g.n != n || static_cast<int>(phi.size()) != n)
    throw DomainError("metric and phi must match the base dimension", "metric");

  std::vector<Expr> norm_parts;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      norm_parts.push_back(mul({g.upper(i, j), phi[i], phi[j]}));
  if (!is_zero(add(std::move(norm_parts)) - make_num(1)).zero)
    throw DomainError("phi is not unit for this metric; rescale g", "metric");

  std::vector<Expr> v;
  for (int i = 0; i < n; ++i) {
    std::vector<Expr> parts;
    for (int j = 0; j < n; ++j) parts.push_back(mul({g.upper(i, j), phi[j]}));
    v.push_back(add(std::move(parts)));
  }
  Slice s = make_slice(ctx, phi, std::move(v));
  SplitFrame fr = build_split_frame(c, s);

  // On an adapted axis the lift collapses to a closed form in the inverse
  // metric row; cross-check it whenever that shortcut applies.
  const int a = adapted_axis(ctx, s.phi);
  if (a >= 0) {
    for (int nu = 0; nu < ctx.m(); ++nu)
      for (int sig = 0; sig < ctx.m(); ++sig)
        for (int k = 0; k < n; ++k) {
          Expr want;
          if (k == a) {
            std::vector<Expr> parts;
            parts.push_back(ctx.d(c.at(nu, a, a), ctx.dir_jet(sig, a)));
            for (int p = 0; p < n; ++p) {
              if (p == a) continue;
              for (int q = 0; q < n; ++q) {
                if (q == a) continue;
                parts.push_back(make_num(-1) *
                                mul({g.upper(a, p), g.upper(a, q),
                                     ctx.d(c.at(nu, p, q), ctx.dir_jet(sig, a))}));
              }
            }
            want = make_num(1, 2) * add(std::move(parts));
          } else {
            std::vector<Expr> parts;
            parts.push_back(ctx.d(c.at(nu, a, k), ctx.dir_jet(sig, a)));
            for (int p = 0; p < n; ++p)
              if (p != a)
                parts.push_back(mul({g.upper(a, p),
                                     ctx.d(c.at(nu, p, k), ctx.dir_jet(sig, a))}));
            want = add(std::move(parts));
          }
          if (!is_zero(want - fr.H.at(nu, sig, k)).zero)
            throw SymbolicError("metric lift display disagrees with the first "
                                "order route at H[" + std::to_string(nu) + "][" +
                                std::to_string(sig) + "][" + std::to_string(k) +
                                "]");
        }
  }
  return fr;
}

AdaptedChart adapt_chart(const Connection& c, const Slice& s) {
  const JetContext& ctx = c.ctx();
  const int n = ctx.n(), m = ctx.m();

  int a = -1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (!is_zero(ctx.d(s.phi[i], ctx.dir_x(j))).zero)
        throw DomainError("the chart helper handles constant phi only", "phi");
    if (a < 0 && !is_zero(s.phi[i]).zero) a = i;
  }
  if (a < 0) throw DomainError("phi vanishes, nothing to adapt to", "phi");

  // New base coordinate along a: x'^a = phi_i x^i, the rest unchanged. The
  // primed coordinates reuse the old symbols, so rewriting an expression
  // means substituting the old coordinates in terms of them:
  //   x^a = (x^a - sum_{p != a} phi_p x^p) / phi_a
  //   y^s_a = phi_a y^s_a,   y^s_p = y^s_p + phi_p y^s_a.
  // The y^s_a substitution must run first; later ones reference the primed
  // y^s_a in their replacement and must not see it rewritten again.
  Expr inv_pa = powi(s.phi[a], -1);
  std::vector<Expr> xa_parts{ctx.x(a)};
  for (int p = 0; p < n; ++p)
    if (p != a) xa_parts.push_back(make_num(-1) * mul({s.phi[p], ctx.x(p)}));
  Expr xa_new = mul({add(std::move(xa_parts)), inv_pa});

  auto rewrite = [&](const Expr& e) {
    Expr out = subst(e, ctx.dir_symbol(ctx.dir_x(a)), xa_new);
    for (int sig = 0; sig < m; ++sig) {
      out = subst(out, ctx.dir_symbol(ctx.dir_jet(sig, a)),
                  mul({s.phi[a], ctx.jet(sig, a)}));
      for (int p = 0; p < n; ++p)
        if (p != a)
          out = subst(out, ctx.dir_symbol(ctx.dir_jet(sig, p)),
                      ctx.jet(sig, p) + mul({s.phi[p], ctx.jet(sig, a)}));
    }
    return out;
  };

  // Jacobian J^k_i = dx^k_old / dx'^i of the inverse coordinate change.
  auto jac = [&](int k, int i) -> Expr {
    if (k == a)
      return i == a ? inv_pa : make_num(-1) * mul({s.phi[i], inv_pa});
    return make_num(k == i ? 1 : 0);
  };

  AdaptedChart out{Connection(ctx), Slice{}, a};
  for (int sig = 0; sig < m; ++sig)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        std::vector<Expr> parts;
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            parts.push_back(mul({jac(k, i), jac(l, j), rewrite(c.at(sig, k, l))}));
        out.connection.set(sig, i, j, add(std::move(parts)));
      }

  // phi' = dx'^a; v transforms by the forward jacobian, v'^a = i_v phi = 1.
  std::vector<Expr> phi_new(n, make_num(0)), v_new(n, make_num(0));
  phi_new[a] = make_num(1);
  v_new[a] = make_num(1);
  for (int p = 0; p < n; ++p)
    if (p != a) v_new[p] = rewrite(s.v[p]);
  out.slice = make_slice(ctx, std::move(phi_new), std::move(v_new));
  return out;
}

}  // namespace jetcurv

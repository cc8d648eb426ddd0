#include "jetcurv/connection.hpp"

#include "jetcurv/zero_test.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace jetcurv {

namespace {

// Index into the upper-triangular (i <= j) block of one fibre slot.
int tri_index(int i, int j, int n) { return i * n - i * (i - 1) / 2 + (j - i); }

void want_component_zero(const std::vector<Expr>& comps, const char* what) {
  ComponentsZero r = components_zero(comps);
  if (!r.zero)
    throw SymbolicError(std::string(what) + " (component " +
                        std::to_string(r.failed_index) + " is nonzero)");
}

}  // namespace

Connection::Connection(const JetContext& ctx)
    : ctx_(&ctx),
      f_(static_cast<std::size_t>(ctx.m()) * (ctx.n() * (ctx.n() + 1) / 2),
         make_num(0)) {}

void Connection::set(int s, int i, int j, Expr e) {
  if (i > j) std::swap(i, j);
  ctx_->dir_jet(s, i);  // bounds check via the context
  ctx_->dir_x(j);
  f_[static_cast<std::size_t>(s) * (ctx_->n() * (ctx_->n() + 1) / 2) +
     tri_index(i, j, ctx_->n())] = std::move(e);
}

const Expr& Connection::at(int s, int i, int j) const {
  if (i > j) std::swap(i, j);
  ctx_->dir_jet(s, i);
  ctx_->dir_x(j);
  return f_[static_cast<std::size_t>(s) * (ctx_->n() * (ctx_->n() + 1) / 2) +
            tri_index(i, j, ctx_->n())];
}

Slice make_slice(const JetContext& ctx, std::vector<Expr> phi,
                 std::vector<Expr> v) {
  const int n = ctx.n();
  if (static_cast<int>(phi.size()) != n || static_cast<int>(v.size()) != n)
    throw DomainError("slice needs one phi and one v component per base direction",
                      "slice");

  auto base_only = [&](const Expr& e, const char* which) {
    for (SymbolId id : free_symbols(e)) {
      SymbolRole role = ctx.symbols().role(id);
      if (role != SymbolRole::BaseCoord && role != SymbolRole::Parameter)
        throw DomainError(std::string(which) +
                              " must depend on base coordinates only, found '" +
                              ctx.symbols().name(id) + "'",
                          "slice");
    }
  };
  for (const Expr& e : phi) base_only(e, "phi");
  for (const Expr& e : v) base_only(e, "v");

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!is_zero(ctx.d(phi[i], ctx.dir_x(j)) - ctx.d(phi[j], ctx.dir_x(i))).zero)
        throw DomainError("phi is not closed", "slice");

  std::vector<Expr> pairing_parts;
  for (int i = 0; i < n; ++i) pairing_parts.push_back(mul({v[i], phi[i]}));
  Expr q = add(std::move(pairing_parts));
  if (is_zero(q).zero)
    throw DomainError("i_v phi vanishes, the slice is degenerate", "slice");

  Slice out;
  out.phi = std::move(phi);
  if (is_zero(q - make_num(1)).zero) {
    out.v = std::move(v);
  } else {
    Expr scale = powi(q, -1);
    out.v.reserve(n);
    for (Expr& c : v) out.v.push_back(mul({std::move(c), scale}));
    std::vector<Expr> check;
    for (int i = 0; i < n; ++i) check.push_back(mul({out.v[i], out.phi[i]}));
    if (!is_zero(add(std::move(check)) - make_num(1)).zero)
      throw DomainError("could not normalize i_v phi to 1", "slice");
  }
  out.normalized = true;
  return out;
}

DiffForm contact_form(const JetContext& ctx, int s) {
  DiffForm w = coframe_form(ctx, ctx.dir_y(s));
  for (int i = 0; i < ctx.n(); ++i)
    w.comp[ctx.dir_x(i)] = make_num(-1) * ctx.jet(s, i);
  return w;
}

VectorField gamma_field(const Connection& c, int i) {
  const JetContext& ctx = c.ctx();
  VectorField g(ctx);
  g.comp[ctx.dir_x(i)] = make_num(1);
  for (int s = 0; s < ctx.m(); ++s) {
    g.comp[ctx.dir_y(s)] = ctx.jet(s, i);
    for (int j = 0; j < ctx.n(); ++j) g.comp[ctx.dir_jet(s, j)] = c.at(s, i, j);
  }
  return g;
}

std::vector<VectorField> gamma_fields(const Connection& c) {
  std::vector<VectorField> out;
  out.reserve(c.ctx().n());
  for (int i = 0; i < c.ctx().n(); ++i) out.push_back(gamma_field(c, i));
  return out;
}

VectorField gamma_v(const Connection& c, const Slice& s) {
  const JetContext& ctx = c.ctx();
  VectorField out(ctx);
  for (int i = 0; i < ctx.n(); ++i) out = out + s.v[i] * gamma_field(c, i);
  return out;
}

VectorValuedForm gamma_vvf(const Connection& c) {
  const JetContext& ctx = c.ctx();
  VectorValuedForm G(ctx, 1);
  for (int i = 0; i < ctx.n(); ++i) {
    VectorField gi = gamma_field(c, i);
    for (int a = 0; a < ctx.dim(); ++a) G.at(a, ctx.dir_x(i)) = gi.comp[a];
  }
  return G;
}

VectorValuedForm s1_phi(const JetContext& ctx, const Slice& s) {
  VectorValuedForm S(ctx, 1);
  for (int sig = 0; sig < ctx.m(); ++sig) {
    DiffForm w = contact_form(ctx, sig);
    for (int i = 0; i < ctx.n(); ++i)
      S = S + tensor(s.phi[i] * w, frame_field(ctx, ctx.dir_jet(sig, i)));
  }
  return S;
}

namespace {

VectorValuedForm deformation_unchecked(const Connection& c, const Slice& s) {
  return lie_vvf(c.ctx(), gamma_v(c, s), s1_phi(c.ctx(), s));
}

}  // namespace

VectorValuedForm deformation(const Connection& c, const Slice& s) {
  const JetContext& ctx = c.ctx();
  VectorValuedForm L = deformation_unchecked(c, s);
  VectorValuedForm sliced =
      interior(gamma_v(c, s), fn_bracket(ctx, gamma_vvf(c), s1_phi(ctx, s)));
  want_component_zero((L - sliced).comp,
                      "deformation disagrees with the bracket slice");
  return L;
}

HTable horizontal_coefficients(const Connection& c, const Slice& s) {
  const JetContext& ctx = c.ctx();
  if (!s.normalized)
    throw DomainError("horizontal coefficients need a normalized slice", "slice");
  const int n = ctx.n();
  const int m = ctx.m();

  HTable A(n, m);
  for (int nu = 0; nu < m; ++nu)
    for (int sig = 0; sig < m; ++sig)
      for (int k = 0; k < n; ++k) {
        std::vector<Expr> parts;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j)
            parts.push_back(mul(
                {s.v[i], s.phi[j], ctx.d(c.at(nu, i, k), ctx.dir_jet(sig, j))}));
          if (nu == sig)
            parts.push_back(make_num(-1) *
                            mul({s.v[i], ctx.d(s.phi[k], ctx.dir_x(i))}));
        }
        A.at(nu, sig, k) = add(std::move(parts));
      }

  HTable H(n, m);
  for (int nu = 0; nu < m; ++nu)
    for (int sig = 0; sig < m; ++sig) {
      std::vector<Expr> trace_parts;
      for (int l = 0; l < n; ++l)
        trace_parts.push_back(mul({s.v[l], A.at(nu, sig, l)}));
      Expr tr = add(std::move(trace_parts));
      for (int k = 0; k < n; ++k)
        H.at(nu, sig, k) =
            A.at(nu, sig, k) + mul({make_num(-1, 2), s.phi[k], tr});
    }

  // The defining property: each lift is a -1 eigenvector of the deformation.
  VectorValuedForm L = deformation_unchecked(c, s);
  for (int sig = 0; sig < m; ++sig) {
    VectorField u = horizontal_lift(ctx, H, sig);
    want_component_zero((apply(L, u) + u).comp,
                        "horizontal lift fails its eigen-equation");
  }
  return H;
}

VectorField horizontal_lift(const JetContext& ctx, const HTable& H, int sigma) {
  VectorField u(ctx);
  u.comp[ctx.dir_y(sigma)] = make_num(1);
  for (int nu = 0; nu < ctx.m(); ++nu)
    for (int k = 0; k < ctx.n(); ++k)
      u.comp[ctx.dir_jet(nu, k)] = H.at(nu, sigma, k);
  return u;
}

std::vector<VectorField> SplitFrame::frame() const {
  std::vector<VectorField> out;
  out.reserve(h_fields.size() + gamma.size() + w_fields.size() + p_fields.size());
  out.insert(out.end(), h_fields.begin(), h_fields.end());
  out.insert(out.end(), gamma.begin(), gamma.end());
  out.insert(out.end(), w_fields.begin(), w_fields.end());
  out.insert(out.end(), p_fields.begin(), p_fields.end());
  return out;
}

std::vector<DiffForm> SplitFrame::coframe() const {
  std::vector<DiffForm> out;
  out.reserve(omega.size() + dx.size() + theta.size() + chi.size());
  out.insert(out.end(), omega.begin(), omega.end());
  out.insert(out.end(), dx.begin(), dx.end());
  out.insert(out.end(), theta.begin(), theta.end());
  out.insert(out.end(), chi.begin(), chi.end());
  return out;
}

SplitFrame build_split_frame(const Connection& c, const Slice& s, bool verify) {
  const JetContext& ctx = c.ctx();
  const int n = ctx.n();
  const int m = ctx.m();

  SplitFrame fr;
  fr.H = horizontal_coefficients(c, s);

  for (int sig = 0; sig < m; ++sig)
    fr.h_fields.push_back(horizontal_lift(ctx, fr.H, sig));
  fr.gamma = gamma_fields(c);

  // Anchor: a base direction along which v is safely nonzero. Prefer a
  // plain nonzero constant; fall back to a probe test.
  int anchor = -1;
  for (int a = 0; a < n && anchor < 0; ++a) {
    const Expr& va = s.v[a];
    if (va.kind() == Kind::Num && !va.is_zero_literal()) anchor = a;
  }
  if (anchor < 0)
    for (int a = 0; a < n && anchor < 0; ++a)
      if (!is_zero(s.v[a]).zero) anchor = a;
  if (anchor < 0)
    throw DomainError("every v component tests as zero", "slice");
  fr.anchor = anchor;

  for (int nu = 0; nu < m; ++nu) fr.omega.push_back(contact_form(ctx, nu));
  for (int nu = 0; nu < m; ++nu) {
    for (int k = 0; k < n; ++k) {
      DiffForm psi = coframe_form(ctx, ctx.dir_jet(nu, k));
      for (int i = 0; i < n; ++i)
        psi = psi + (make_num(-1) * c.at(nu, k, i)) * coframe_form(ctx, ctx.dir_x(i));
      for (int sig = 0; sig < m; ++sig)
        psi = psi + (make_num(-1) * fr.H.at(nu, sig, k)) * fr.omega[sig];
      fr.psi.push_back(std::move(psi));
    }
  }
  for (int i = 0; i < n; ++i) fr.dx.push_back(coframe_form(ctx, ctx.dir_x(i)));

  Expr inv_anchor = powi(s.v[anchor], -1);
  for (int nu = 0; nu < m; ++nu) {
    // chi and P close the fourth block.
    DiffForm chi(ctx, 1);
    for (int k = 0; k < n; ++k) chi = chi + s.v[k] * fr.psi[nu * n + k];
    fr.chi.push_back(chi);

    VectorField p(ctx);
    for (int j = 0; j < n; ++j)
      p.comp[ctx.dir_jet(nu, j)] = s.phi[j];
    fr.p_fields.push_back(std::move(p));

    for (int p_idx = 0; p_idx < n; ++p_idx) {
      if (p_idx == anchor) continue;
      VectorField w(ctx);
      w.comp[ctx.dir_jet(nu, p_idx)] = make_num(1);
      w.comp[ctx.dir_jet(nu, anchor)] =
          make_num(-1) * mul({s.v[p_idx], inv_anchor});
      fr.w_fields.push_back(std::move(w));
      fr.theta.push_back(fr.psi[nu * n + p_idx] +
                         (make_num(-1) * s.phi[p_idx]) * chi);
    }
  }

  fr.proj_h = VectorValuedForm(ctx, 1);
  for (int sig = 0; sig < m; ++sig)
    fr.proj_h = fr.proj_h + tensor(fr.omega[sig], fr.h_fields[sig]);
  fr.proj_gamma = VectorValuedForm(ctx, 1);
  for (int i = 0; i < n; ++i)
    fr.proj_gamma = fr.proj_gamma + tensor(fr.dx[i], fr.gamma[i]);
  fr.proj_v = VectorValuedForm(ctx, 1);
  for (int nu = 0; nu < m; ++nu)
    for (int k = 0; k < n; ++k)
      fr.proj_v = fr.proj_v + tensor(fr.psi[nu * n + k],
                                     frame_field(ctx, ctx.dir_jet(nu, k)));
  fr.proj_vplus = VectorValuedForm(ctx, 1);
  for (int nu = 0; nu < m; ++nu)
    fr.proj_vplus = fr.proj_vplus + tensor(fr.chi[nu], fr.p_fields[nu]);
  fr.proj_vtilde = fr.proj_v - fr.proj_vplus;

  if (verify) {
    std::vector<VectorField> frame = fr.frame();
    std::vector<DiffForm> coframe = fr.coframe();
    for (std::size_t r = 0; r < coframe.size(); ++r)
      for (std::size_t col = 0; col < frame.size(); ++col) {
        Expr pairing = interior(frame[col], coframe[r]);
        if (r == col) pairing = pairing - make_num(1);
        want_component_zero({pairing}, "frame/coframe pairing is not the identity");
      }

    VectorValuedForm total = fr.proj_h + fr.proj_gamma + fr.proj_v;
    want_component_zero((total - identity_vvf(ctx)).comp,
                        "projectors do not resolve the identity");

    auto idempotent = [&](const VectorValuedForm& P, const char* what) {
      want_component_zero((vvf_compose(P, P) - P).comp, what);
    };
    idempotent(fr.proj_h, "h projector is not idempotent");
    idempotent(fr.proj_gamma, "Gamma projector is not idempotent");
    idempotent(fr.proj_v, "vertical projector is not idempotent");
    idempotent(fr.proj_vtilde, "trace-free vertical projector is not idempotent");
    idempotent(fr.proj_vplus, "lifted vertical projector is not idempotent");

    const VectorValuedForm* parts[] = {&fr.proj_h, &fr.proj_gamma,
                                       &fr.proj_vtilde, &fr.proj_vplus};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        if (a == b) continue;
        want_component_zero(vvf_compose(*parts[a], *parts[b]).comp,
                            "distinct projectors do not annihilate");
      }
  }
  return fr;
}

MatrixCheckReport verify_eigensplitting(const Connection& c, const Slice& s,
                                        const JetPoint& p) {
  Mat L = assemble(deformation(c, s), p);
  return eigen_spectrum_report(L, c.ctx().m());
}

}  // namespace jetcurv

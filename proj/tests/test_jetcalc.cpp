#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "jetcurv/fn_bracket.hpp"
#include "jetcurv/forms.hpp"
#include "test_support.hpp"

using namespace jetcurv;
using testsupport::random_poly;

namespace {

// Symmetric table of second order coefficients, addressed (fibre, base, base).
struct FTable {
  int n = 0, m = 0;
  std::vector<Expr> f;

  explicit FTable(const JetContext& ctx)
      : n(ctx.n()), m(ctx.m()),
        f(static_cast<std::size_t>(ctx.m()) * ctx.n() * ctx.n(), make_num(0)) {}
  Expr& at(int s, int i, int j) { return f[(static_cast<std::size_t>(s) * n + i) * n + j]; }
  const Expr& at(int s, int i, int j) const {
    return f[(static_cast<std::size_t>(s) * n + i) * n + j];
  }
  void set(int s, int i, int j, const Expr& e) {
    at(s, i, j) = e;
    at(s, j, i) = e;
  }
};

// d/dx^i + y^s_i d/dy^s + F^s_ij d/dy^s_j, the field that differentiates
// along solutions in the i-th base direction.
VectorField horizontal_field(const JetContext& ctx, const FTable& F, int i) {
  VectorField g(ctx);
  g.comp[ctx.dir_x(i)] = make_num(1);
  for (int s = 0; s < ctx.m(); ++s) {
    g.comp[ctx.dir_y(s)] = ctx.jet(s, i);
    for (int j = 0; j < ctx.n(); ++j) g.comp[ctx.dir_jet(s, j)] = F.at(s, i, j);
  }
  return g;
}

// dx^i (x) Gamma_i as an endomorphism.
VectorValuedForm horizontal_vvf(const JetContext& ctx, const FTable& F) {
  VectorValuedForm G(ctx, 1);
  for (int i = 0; i < ctx.n(); ++i) {
    VectorField gi = horizontal_field(ctx, F, i);
    for (int a = 0; a < ctx.dim(); ++a) G.at(a, ctx.dir_x(i)) = gi.comp[a];
  }
  return G;
}

// dy^s - y^s_i dx^i
DiffForm contact_form(const JetContext& ctx, int s) {
  DiffForm w = coframe_form(ctx, ctx.dir_y(s));
  for (int i = 0; i < ctx.n(); ++i)
    w.comp[ctx.dir_x(i)] = make_num(-1) * ctx.jet(s, i);
  return w;
}

// phi_i w^s (x) d/dy^s_i, the vertical endomorphism scaled by a base 1-form.
VectorValuedForm vertical_endomorphism(const JetContext& ctx,
                                       const std::vector<Expr>& phi) {
  VectorValuedForm S(ctx, 1);
  for (int s = 0; s < ctx.m(); ++s) {
    DiffForm w = contact_form(ctx, s);
    for (int i = 0; i < ctx.n(); ++i)
      S = S + tensor(phi[i] * w, frame_field(ctx, ctx.dir_jet(s, i)));
  }
  return S;
}

void check_zero(const std::vector<Expr>& comps, bool want_symbolic = false) {
  ComponentsZero r = components_zero(comps);
  INFO("first nonzero component index: " << r.failed_index);
  CHECK(r.zero);
  if (want_symbolic) CHECK(r.tier == ZeroTier::Symbolic);
}

// Orbit shape of a gravitating point in polar-style coordinates. Small, has
// genuine rational coefficients, and couples all three directions.
struct OrbitFixture {
  JetContext ctx{{"t", "th"}, {"r"}};
  FTable F{ctx};

  OrbitFixture() {
    Expr r = ctx.y(0), rt = ctx.jet(0, 0), rth = ctx.jet(0, 1);
    F.set(0, 0, 0, make_num(-1) * r);
    F.set(0, 0, 1, mul({rt, rth, powi(r, -1)}));
    F.set(0, 1, 1,
          add({mul({make_num(-2), r}),
               make_num(-1) * mul({powi(rth, 2), powi(r, -1)})}));
  }
};

// Two base and two fibre directions with random polynomial coefficients,
// for the checks that need cross-fibre coupling.
struct RandomFixture {
  JetContext ctx{{"u", "w"}, {"p", "q"}};
  FTable F{ctx};
  Prng rng{0x5EED};
  std::vector<Expr> coords;

  RandomFixture() {
    for (int a = 0; a < ctx.dim(); ++a) coords.push_back(ctx.coord(a));
    for (int s = 0; s < ctx.m(); ++s)
      for (int i = 0; i < ctx.n(); ++i)
        for (int j = i; j < ctx.n(); ++j) F.set(s, i, j, random_poly(rng, coords, 2));
  }
};

VectorField random_field(Prng& rng, const JetContext& ctx,
                         const std::vector<Expr>& coords) {
  VectorField U(ctx);
  for (int a = 0; a < ctx.dim(); ++a) U.comp[a] = random_poly(rng, coords, 2);
  return U;
}

DiffForm random_one_form(Prng& rng, const JetContext& ctx,
                         const std::vector<Expr>& coords) {
  DiffForm al(ctx, 1);
  for (int a = 0; a < ctx.dim(); ++a) al.comp[a] = random_poly(rng, coords, 2);
  return al;
}

VectorValuedForm random_endomorphism(Prng& rng, const JetContext& ctx,
                                     const std::vector<Expr>& coords, int entries) {
  VectorValuedForm A(ctx, 1);
  for (int k = 0; k < entries; ++k)
    A.at(static_cast<int>(rng.uniform_int(0, ctx.dim() - 1)),
         static_cast<int>(rng.uniform_int(0, ctx.dim() - 1))) =
        random_poly(rng, coords, 2);
  return A;
}

}  // namespace

TEST_CASE("pair table indexing") {
  CHECK(pair_count(5) == 10);
  int dim = 5;
  int k = 0;
  for (int p = 0; p < dim; ++p)
    for (int q = p + 1; q < dim; ++q) CHECK(pair_index(p, q, dim) == k++);
  CHECK(k == pair_count(dim));
}

TEST_CASE("contact forms close onto jet coframes") {
  OrbitFixture fx;
  const JetContext& ctx = fx.ctx;
  DiffForm w = contact_form(ctx, 0);
  DiffForm dw = exterior_d(ctx, w);
  // d(dy - y_i dx^i) = dx^i ^ dy_i
  DiffForm want(ctx, 2);
  for (int i = 0; i < ctx.n(); ++i)
    want = want + wedge(coframe_form(ctx, ctx.dir_x(i)),
                        coframe_form(ctx, ctx.dir_jet(0, i)));
  check_zero((dw - want).comp, true);
}

TEST_CASE("exterior derivative squares to zero and obeys the product rule") {
  OrbitFixture fx;
  const JetContext& ctx = fx.ctx;
  Prng rng(7);
  std::vector<Expr> coords;
  for (int a = 0; a < ctx.dim(); ++a) coords.push_back(ctx.coord(a));

  for (int round = 0; round < 3; ++round) {
    DiffForm f(ctx, 0);
    f.comp[0] = testsupport::random_expr(rng, coords, 3);
    check_zero(exterior_d(ctx, exterior_d(ctx, f)).comp);

    Expr g = random_poly(rng, coords, 2);
    DiffForm al = random_one_form(rng, ctx, coords);
    DiffForm lhs = exterior_d(ctx, g * al);
    DiffForm dg(ctx, 1);
    for (int a = 0; a < ctx.dim(); ++a) dg.comp[a] = ctx.d(g, a);
    DiffForm rhs = wedge(dg, al) + g * exterior_d(ctx, al);
    check_zero((lhs - rhs).comp, true);
  }
}

TEST_CASE("wedge pairing matches interior contractions") {
  OrbitFixture fx;
  const JetContext& ctx = fx.ctx;
  Prng rng(11);
  std::vector<Expr> coords;
  for (int a = 0; a < ctx.dim(); ++a) coords.push_back(ctx.coord(a));

  DiffForm al = random_one_form(rng, ctx, coords);
  DiffForm be = random_one_form(rng, ctx, coords);
  VectorField U = random_field(rng, ctx, coords);
  VectorField W = random_field(rng, ctx, coords);

  check_zero((wedge(al, be) + wedge(be, al)).comp, true);

  Expr paired = interior(W, interior2(U, wedge(al, be)));
  Expr direct = mul({interior(U, al), interior(W, be)}) -
                mul({interior(W, al), interior(U, be)});
  check_zero({paired - direct}, true);

  // Contracting a tensor product peels the form factor.
  VectorField X = random_field(rng, ctx, coords);
  VectorValuedForm T = tensor(wedge(al, be), X);
  VectorValuedForm one = interior(U, T);
  VectorValuedForm want = tensor(interior2(U, wedge(al, be)), X);
  check_zero((one - want).comp, true);
}

TEST_CASE("Jacobi identity for polynomial fields") {
  OrbitFixture fx;
  const JetContext& ctx = fx.ctx;
  Prng rng(13);
  std::vector<Expr> coords;
  for (int a = 0; a < ctx.dim(); ++a) coords.push_back(ctx.coord(a));

  VectorField U = random_field(rng, ctx, coords);
  VectorField W = random_field(rng, ctx, coords);
  VectorField Z = random_field(rng, ctx, coords);

  VectorField total = lie_bracket(ctx, U, lie_bracket(ctx, W, Z)) +
                      lie_bracket(ctx, W, lie_bracket(ctx, Z, U)) +
                      lie_bracket(ctx, Z, lie_bracket(ctx, U, W));
  check_zero(total.comp, true);
}

TEST_CASE("Lie derivative commutes with d and distributes over wedges") {
  OrbitFixture fx;
  const JetContext& ctx = fx.ctx;
  Prng rng(17);
  std::vector<Expr> coords;
  for (int a = 0; a < ctx.dim(); ++a) coords.push_back(ctx.coord(a));

  VectorField U = random_field(rng, ctx, coords);
  DiffForm f(ctx, 0);
  f.comp[0] = random_poly(rng, coords, 3);

  // L_U df = d(Uf)
  DiffForm df = exterior_d(ctx, f);
  DiffForm lhs = lie_form(ctx, U, df);
  DiffForm uf(ctx, 0);
  uf.comp[0] = interior(U, df);
  check_zero((lhs - exterior_d(ctx, uf)).comp, true);

  // L_U (al ^ be) = L_U al ^ be + al ^ L_U be, which exercises the
  // degree-2 formula against the Cartan route used for degree 1.
  DiffForm al = random_one_form(rng, ctx, coords);
  DiffForm be = random_one_form(rng, ctx, coords);
  DiffForm two = lie_form(ctx, U, wedge(al, be));
  DiffForm split = wedge(lie_form(ctx, U, al), be) + wedge(al, lie_form(ctx, U, be));
  check_zero((two - split).comp, true);
}

TEST_CASE("vector-valued Lie derivatives match their evaluation rules") {
  OrbitFixture fx;
  const JetContext& ctx = fx.ctx;
  Prng rng(19);
  std::vector<Expr> coords;
  for (int a = 0; a < ctx.dim(); ++a) coords.push_back(ctx.coord(a));

  VectorField U = random_field(rng, ctx, coords);
  VectorField W = random_field(rng, ctx, coords);
  VectorField Z = random_field(rng, ctx, coords);

  // (L_U A)(W) = [U, A W] - A([U, W])
  VectorValuedForm A = random_endomorphism(rng, ctx, coords, 8);
  VectorField lhs1 = apply(lie_vvf(ctx, U, A), W);
  VectorField rhs1 = lie_bracket(ctx, U, apply(A, W)) - apply(A, lie_bracket(ctx, U, W));
  check_zero((lhs1 - rhs1).comp, true);

  // Product rule across the tensor factors, degree 1.
  DiffForm al = random_one_form(rng, ctx, coords);
  VectorValuedForm T = tensor(al, Z);
  VectorValuedForm lhs2 = lie_vvf(ctx, U, T);
  VectorValuedForm rhs2 =
      tensor(lie_form(ctx, U, al), Z) + tensor(al, lie_bracket(ctx, U, Z));
  check_zero((lhs2 - rhs2).comp, true);

  // (L_U K)(W, Z) = [U, K(W,Z)] - K([U,W], Z) - K(W, [U,Z]) at degree 2.
  DiffForm be = random_one_form(rng, ctx, coords);
  VectorValuedForm K = tensor(wedge(al, be), random_field(rng, ctx, coords));
  VectorField lhs3 = apply(lie_vvf(ctx, U, K), W, Z);
  VectorField rhs3 = lie_bracket(ctx, U, apply(K, W, Z)) -
                     apply(K, lie_bracket(ctx, U, W), Z) -
                     apply(K, W, lie_bracket(ctx, U, Z));
  check_zero((lhs3 - rhs3).comp, true);

  // Product rule across the tensor factors, degree 2.
  VectorField Y = random_field(rng, ctx, coords);
  VectorValuedForm KT = tensor(wedge(al, be), Y);
  VectorValuedForm want = tensor(lie_form(ctx, U, wedge(al, be)), Y) +
                          tensor(wedge(al, be), lie_bracket(ctx, U, Y));
  check_zero((lie_vvf(ctx, U, KT) - want).comp, true);
}

TEST_CASE("endomorphism bracket matches the evaluation expansion") {
  OrbitFixture fx;
  const JetContext& ctx = fx.ctx;
  Prng rng(23);
  std::vector<Expr> coords;
  for (int a = 0; a < ctx.dim(); ++a) coords.push_back(ctx.coord(a));

  VectorValuedForm A = random_endomorphism(rng, ctx, coords, 6);
  VectorValuedForm B = random_endomorphism(rng, ctx, coords, 6);
  VectorField X = random_field(rng, ctx, coords);
  VectorField Y = random_field(rng, ctx, coords);

  VectorValuedForm AB = fn_bracket(ctx, A, B);

  // Bracket of two endomorphisms is symmetric.
  check_zero((AB - fn_bracket(ctx, B, A)).comp, true);

  // Evaluation expansion on two arbitrary fields.
  VectorField AX = apply(A, X), AY = apply(A, Y);
  VectorField BX = apply(B, X), BY = apply(B, Y);
  VectorField LXY = lie_bracket(ctx, X, Y);
  VectorField rhs = lie_bracket(ctx, AX, BY) + lie_bracket(ctx, BX, AY);
  rhs = rhs + apply(A, apply(B, LXY)) + apply(B, apply(A, LXY));
  rhs = rhs - apply(A, lie_bracket(ctx, BX, Y) + lie_bracket(ctx, X, BY));
  rhs = rhs - apply(B, lie_bracket(ctx, AX, Y) + lie_bracket(ctx, X, AY));
  check_zero((apply(AB, X, Y) - rhs).comp, true);

  // The identity endomorphism is central.
  check_zero(fn_bracket(ctx, A, identity_vvf(ctx)).comp, true);
  check_zero(fn_bracket(ctx, identity_vvf(ctx), identity_vvf(ctx)).comp, true);

  // Field against field is the plain Lie bracket.
  VectorValuedForm xy = fn_bracket(ctx, as_vvf(X), as_vvf(Y));
  check_zero((as_vector_field(xy) - LXY).comp, true);

  // Field against endomorphism flips sign with the argument order.
  VectorValuedForm ua = fn_bracket(ctx, as_vvf(X), A);
  VectorValuedForm au = fn_bracket(ctx, A, as_vvf(X));
  check_zero((ua + au).comp, true);
  check_zero((ua - lie_vvf(ctx, X, A)).comp, true);

  // Degrees above 2 are rejected.
  DiffForm al = random_one_form(rng, ctx, coords);
  DiffForm be = random_one_form(rng, ctx, coords);
  VectorValuedForm K = tensor(wedge(al, be), X);
  CHECK_THROWS_AS(fn_bracket(ctx, A, K), DimensionError);
  CHECK_THROWS_AS(fn_bracket(ctx, K, K), DimensionError);
}

TEST_CASE("horizontal fields bracket along the coefficient table") {
  OrbitFixture orbit;
  RandomFixture rnd;

  auto check_rows = [](const JetContext& ctx, const FTable& F) {
    for (int i = 0; i < ctx.n(); ++i) {
      VectorField Gi = horizontal_field(ctx, F, i);
      for (int j = 0; j < ctx.n(); ++j) {
        VectorField Gj = horizontal_field(ctx, F, j);
        // [Gamma_i, Gamma_j] = (Gamma_i F^s_jk - Gamma_j F^s_ik) d/dy^s_k
        VectorField want(ctx);
        for (int s = 0; s < ctx.m(); ++s)
          for (int k = 0; k < ctx.n(); ++k)
            want.comp[ctx.dir_jet(s, k)] =
                directional(ctx, Gi, F.at(s, j, k)) -
                directional(ctx, Gj, F.at(s, i, k));
        check_zero((lie_bracket(ctx, Gi, Gj) - want).comp, true);
      }

      // [Gamma_i, d/dy^s_j] = -delta^j_i d/dy^s - dF^n_ik/dy^s_j d/dy^n_k
      for (int s = 0; s < ctx.m(); ++s)
        for (int j = 0; j < ctx.n(); ++j) {
          VectorField want(ctx);
          if (j == i) want.comp[ctx.dir_y(s)] = make_num(-1);
          for (int nu = 0; nu < ctx.m(); ++nu)
            for (int k = 0; k < ctx.n(); ++k)
              want.comp[ctx.dir_jet(nu, k)] =
                  make_num(-1) * ctx.d(F.at(nu, i, k), ctx.dir_jet(s, j));
          VectorField got =
              lie_bracket(ctx, Gi, frame_field(ctx, ctx.dir_jet(s, j)));
          check_zero((got - want).comp, true);
        }
    }
  };

  check_rows(orbit.ctx, orbit.F);
  check_rows(rnd.ctx, rnd.F);
}

TEST_CASE("self bracket of the horizontal lift") {
  OrbitFixture orbit;
  RandomFixture rnd;

  auto check_display = [](const JetContext& ctx, const FTable& F) {
    VectorValuedForm G = horizontal_vvf(ctx, F);
    VectorValuedForm got = fn_bracket(ctx, G, G);

    // dx^i ^ dx^j (x) [Gamma_i, Gamma_j], summed over all ordered pairs.
    VectorValuedForm want(ctx, 2);
    for (int i = 0; i < ctx.n(); ++i) {
      VectorField Gi = horizontal_field(ctx, F, i);
      for (int j = 0; j < ctx.n(); ++j) {
        VectorField Gj = horizontal_field(ctx, F, j);
        for (int s = 0; s < ctx.m(); ++s)
          for (int k = 0; k < ctx.n(); ++k)
            add_term2(want, ctx.dir_jet(s, k), ctx.dir_x(i), ctx.dir_x(j),
                      directional(ctx, Gi, F.at(s, j, k)) -
                          directional(ctx, Gj, F.at(s, i, k)));
      }
    }
    check_zero((got - want).comp, true);
  };

  check_display(orbit.ctx, orbit.F);
  check_display(rnd.ctx, rnd.F);
}

TEST_CASE("deformation of the vertical endomorphism") {
  OrbitFixture orbit;
  RandomFixture rnd;

  // phi varies over the base and is deliberately not closed; the identity
  // is pointwise and should not care.
  auto check_deformation = [](const JetContext& ctx, const FTable& F,
                              const std::vector<Expr>& phi) {
    VectorValuedForm G = horizontal_vvf(ctx, F);
    VectorValuedForm S = vertical_endomorphism(ctx, phi);
    VectorValuedForm got = fn_bracket(ctx, G, S);

    VectorValuedForm want(ctx, 2);
    for (int i = 0; i < ctx.n(); ++i) {
      DiffForm dxi = coframe_form(ctx, ctx.dir_x(i));
      for (int nu = 0; nu < ctx.m(); ++nu) {
        want = want + tensor(make_num(-1) * phi[i] * wedge(dxi, contact_form(ctx, nu)),
                             frame_field(ctx, ctx.dir_y(nu)));
        for (int k = 0; k < ctx.n(); ++k) {
          DiffForm inner = phi[k] * coframe_form(ctx, ctx.dir_jet(nu, i));
          inner = inner + ctx.d(phi[k], ctx.dir_x(i)) * contact_form(ctx, nu);
          for (int s = 0; s < ctx.m(); ++s) {
            std::vector<Expr> parts;
            for (int j = 0; j < ctx.n(); ++j)
              parts.push_back(
                  mul({phi[j], ctx.d(F.at(nu, i, k), ctx.dir_jet(s, j))}));
            inner = inner + (make_num(-1) * add(std::move(parts))) * contact_form(ctx, s);
          }
          want = want + tensor(wedge(dxi, inner), frame_field(ctx, ctx.dir_jet(nu, k)));
        }
      }
    }
    check_zero((got - want).comp, true);
  };

  {
    const JetContext& ctx = orbit.ctx;
    Expr t = ctx.x(0), th = ctx.x(1);
    check_deformation(ctx, orbit.F,
                      {add({make_num(1), mul({t, th})}),
                       add({powi(th, 2), make_num(-1) * t})});
    check_deformation(ctx, orbit.F, {make_num(1), make_num(0)});
  }
  {
    const JetContext& ctx = rnd.ctx;
    check_deformation(ctx, rnd.F,
                      {add({make_num(1), ctx.x(1)}), mul({make_num(2), ctx.x(0)})});
  }
}

TEST_CASE("slicing the deformation gives the sliced Lie derivative") {
  OrbitFixture orbit;
  RandomFixture rnd;

  auto check_slice = [](const JetContext& ctx, const FTable& F,
                        const std::vector<Expr>& phi, const std::vector<Expr>& v) {
    VectorValuedForm G = horizontal_vvf(ctx, F);
    VectorValuedForm S = vertical_endomorphism(ctx, phi);

    VectorField V(ctx);
    for (int i = 0; i < ctx.n(); ++i) V.comp[ctx.dir_x(i)] = v[i];
    VectorField Gv = apply(G, V);

    VectorValuedForm lhs = interior(Gv, fn_bracket(ctx, G, S));
    VectorValuedForm rhs = lie_vvf(ctx, Gv, S);
    check_zero((lhs - rhs).comp, true);
  };

  {
    const JetContext& ctx = orbit.ctx;
    Expr t = ctx.x(0), th = ctx.x(1);
    check_slice(ctx, orbit.F, {make_num(1), make_num(0)}, {make_num(1), make_num(0)});
    check_slice(ctx, orbit.F, {make_num(0), make_num(1)}, {th, make_num(1)});
    check_slice(ctx, orbit.F,
                {add({make_num(1), powi(t, 2)}), mul({make_num(3), th})},
                {add({t, th}), mul({t, th})});
  }
  {
    const JetContext& ctx = rnd.ctx;
    check_slice(ctx, rnd.F, {make_num(1), ctx.x(0)},
                {make_num(1), add({ctx.x(0), ctx.x(1)})});
  }
}

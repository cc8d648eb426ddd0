#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "jetcurv/secondorder.hpp"
#include "test_support.hpp"

using namespace jetcurv;
using testsupport::random_poly;

namespace {

Connection lemniscate(const JetContext& ctx) {
  Connection c(ctx);
  Expr r = ctx.y(0), rt = ctx.jet(0, 0), rth = ctx.jet(0, 1);
  c.set(0, 0, 0, -r);
  c.set(0, 0, 1, rt * rth / r);
  c.set(0, 1, 1, make_num(-2) * r - rth * rth / r);
  return c;
}

void check_zero(const std::vector<Expr>& comps) {
  ComponentsZero r = components_zero(comps);
  INFO("first nonzero component index: " << r.failed_index);
  CHECK(r.zero);
}

void check_zero(const Expr& e) { check_zero(std::vector<Expr>{e}); }

std::vector<Expr> ones_and_zeros(int n, int one_at) {
  std::vector<Expr> v(static_cast<std::size_t>(n), make_num(0));
  v[static_cast<std::size_t>(one_at)] = make_num(1);
  return v;
}

// dy^s_i - F^s_ik dx^k, rebuilt by hand so the library construction has an
// independent reference.
DiffForm remainder_ref(const Connection& c, int s, int i) {
  const JetContext& ctx = c.ctx();
  DiffForm w = coframe_form(ctx, ctx.dir_jet(s, i));
  for (int k = 0; k < ctx.n(); ++k)
    w.comp[ctx.dir_x(k)] = make_num(-1) * c.at(s, i, k);
  return w;
}

// A system whose away-from-axis entries never see the jets along the axis,
// which is exactly the compatibility condition for phi = dx^0.
Connection compatible_connection(const JetContext& ctx, Prng& rng) {
  std::vector<Expr> all, away;
  for (int a = 0; a < ctx.dim(); ++a) all.push_back(ctx.coord(a));
  for (int i = 0; i < ctx.n(); ++i) away.push_back(ctx.x(i));
  for (int s = 0; s < ctx.m(); ++s) {
    away.push_back(ctx.y(s));
    for (int k = 1; k < ctx.n(); ++k) away.push_back(ctx.jet(s, k));
  }
  Connection c(ctx);
  for (int s = 0; s < ctx.m(); ++s)
    for (int i = 0; i < ctx.n(); ++i)
      for (int j = i; j < ctx.n(); ++j)
        c.set(s, i, j, random_poly(rng, i == 0 ? all : away, 2));
  return c;
}

}  // namespace

TEST_CASE("annihilator forms reproduce the adapted displays") {
  JetContext ctx({"t", "th"}, {"r"});
  Connection c = lemniscate(ctx);
  Slice s = make_slice(ctx, ones_and_zeros(2, 0), ones_and_zeros(2, 0));
  AnnihilatorForms psi = annihilator_forms(c, s);
  REQUIRE(psi.psi.size() == 3);

  Expr r = ctx.y(0), rt = ctx.jet(0, 0), rth = ctx.jet(0, 1);

  // Repeated axis index: twice the jet remainder, F_tt carrying no jets.
  const DiffForm& att = psi.at(0, 0, 0);
  check_zero(att.comp[ctx.dir_jet(0, 0)] - make_num(2));
  check_zero(att.comp[ctx.dir_x(0)] - make_num(2) * r);
  check_zero(att.comp[ctx.dir_x(1)] + make_num(2) * rt * rth / r);
  check_zero(att.comp[ctx.dir_y(0)]);
  check_zero(att.comp[ctx.dir_jet(0, 1)]);

  // Mixed indices: one contact correction plus one jet remainder. The dt
  // coefficient cancels between the two.
  const DiffForm& atth = psi.at(0, 0, 1);
  check_zero(atth.comp[ctx.dir_y(0)] + rth / r);
  check_zero(atth.comp[ctx.dir_jet(0, 1)] - make_num(1));
  check_zero(atth.comp[ctx.dir_jet(0, 0)]);
  check_zero(atth.comp[ctx.dir_x(0)]);
  check_zero(atth.comp[ctx.dir_x(1)] - make_num(2) * r -
             make_num(2) * rth * rth / r);

  // Away from the axis only the axis-jet derivative survives, and the
  // lemniscate system has none: this is its compatibility in form language.
  check_zero(psi.at(0, 1, 1).comp);

  // The table is symmetric in the two base indices.
  CHECK(&psi.at(0, 1, 0) == &psi.at(0, 0, 1));
}

TEST_CASE("the symmetric derivative term enters with its multiplicity") {
  JetContext ctx({"t", "th"}, {"r"});
  Connection c = lemniscate(ctx);
  Expr r = ctx.y(0), rt = ctx.jet(0, 0), rth = ctx.jet(0, 1), t = ctx.x(0);

  // phi = 2t dt is closed but not constant, so the symmetrized derivative
  // of phi contributes; v rescales to keep the pairing at 1.
  Slice s = make_slice(ctx, {make_num(2) * t, make_num(0)},
                       ones_and_zeros(2, 0));
  AnnihilatorForms psi = annihilator_forms(c, s);

  const DiffForm& att = psi.at(0, 0, 0);
  check_zero(att.comp[ctx.dir_y(0)] - make_num(2));
  check_zero(att.comp[ctx.dir_jet(0, 0)] - make_num(4) * t);
  check_zero(att.comp[ctx.dir_x(0)] + make_num(2) * rt - make_num(4) * t * r);

  const DiffForm& atth = psi.at(0, 0, 1);
  check_zero(atth.comp[ctx.dir_y(0)] + make_num(2) * t * rth / r);
  check_zero(atth.comp[ctx.dir_jet(0, 1)] - make_num(2) * t);

  check_zero(psi.at(0, 1, 1).comp);
}

TEST_CASE("every annihilator form kills the equation fields") {
  // psi^s_ij(Gamma_k) = 0 holds for any system and any closed phi: the
  // contact forms vanish on Gamma_k and the jet remainders cancel by the
  // symmetry of F. This is the one membership family that needs no
  // compatibility at all.
  SUBCASE("lemniscate") {
    JetContext ctx({"t", "th"}, {"r"});
    Connection c = lemniscate(ctx);
    Slice s = make_slice(ctx, ones_and_zeros(2, 0), ones_and_zeros(2, 0));
    AnnihilatorForms psi = annihilator_forms(c, s);
    for (int i = 0; i < 2; ++i) {
      VectorField g = gamma_field(c, i);
      for (const DiffForm& p : psi.psi) check_zero(interior(g, p));
    }
  }

  SUBCASE("random system, bent closed phi") {
    JetContext ctx({"x", "z", "w"}, {"u", "q"});
    Prng rng(7);
    std::vector<Expr> coords;
    for (int a = 0; a < ctx.dim(); ++a) coords.push_back(ctx.coord(a));
    Connection c(ctx);
    for (int s = 0; s < 2; ++s)
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) c.set(s, i, j, random_poly(rng, coords, 2));

    // phi = d(x^2 + z w), closed by construction.
    Slice s = make_slice(
        ctx, {make_num(2) * ctx.x(0), ctx.x(2), ctx.x(1)},
        {make_num(1), make_num(0), make_num(0)});
    AnnihilatorForms psi = annihilator_forms(c, s);
    REQUIRE(psi.psi.size() == 12);
    for (int i = 0; i < 3; ++i) {
      VectorField g = gamma_field(c, i);
      for (const DiffForm& p : psi.psi) check_zero(interior(g, p));
    }
  }
}

TEST_CASE("one base dimension collapses to the classical annihilator") {
  JetContext ctx({"t"}, {"u", "w"});
  Prng rng(11);
  std::vector<Expr> coords;
  for (int a = 0; a < ctx.dim(); ++a) coords.push_back(ctx.coord(a));
  Connection c(ctx);
  c.set(0, 0, 0, random_poly(rng, coords, 3));
  c.set(1, 0, 0, random_poly(rng, coords, 3));

  Slice s = make_slice(ctx, {make_num(1)}, {make_num(1)});
  AnnihilatorForms psi = annihilator_forms(c, s);
  HTable H = horizontal_coefficients(c, s);

  for (int sig = 0; sig < 2; ++sig) {
    // psi^s = -dF^s/dydot^n w^n + 2 wbar^s, and the contact coefficient is
    // twice the classical connection coefficient -H^s_n.
    DiffForm want(ctx, 1);
    for (int nu = 0; nu < 2; ++nu) {
      want = want - ctx.d(c.at(sig, 0, 0), ctx.dir_jet(nu, 0)) *
                        contact_form(ctx, nu);
      check_zero(psi.at(sig, 0, 0).comp[ctx.dir_y(nu)] +
                 make_num(2) * H.at(sig, nu, 0));
    }
    want = want + make_num(2) * remainder_ref(c, sig, 0);
    check_zero((psi.at(sig, 0, 0) - want).comp);
  }
}

TEST_CASE("flat systems are compatible with trivial frames") {
  JetContext ctx({"t", "th"}, {"r"});
  Connection c(ctx);
  Slice s = make_slice(ctx, ones_and_zeros(2, 0), ones_and_zeros(2, 0));

  AnnihilatorForms psi = annihilator_forms(c, s);
  for (int d = 0; d < ctx.dim(); ++d) {
    Expr want = make_num(d == ctx.dir_jet(0, 0) ? 2 : 0);
    check_zero(psi.at(0, 0, 0).comp[d] - want);
  }

  CompatibilityReport rep = check_compatibility(c, s);
  CHECK(rep.compatible);
  CHECK(rep.axis == 0);
  CHECK(rep.witnesses.empty());

  SplitFrame fr = d_minus_frame(c, s);
  for (const Expr& h : fr.H.h) check_zero(h);
}

TEST_CASE("compatibility is decided by the jets along the axis") {
  JetContext ctx({"t", "th"}, {"r"});

  SUBCASE("the lemniscate system passes on both axes") {
    Connection c = lemniscate(ctx);
    for (int axis = 0; axis < 2; ++axis) {
      Slice s = make_slice(ctx, ones_and_zeros(2, axis),
                           ones_and_zeros(2, axis));
      CompatibilityReport rep = check_compatibility(c, s);
      CHECK(rep.compatible);
      CHECK(rep.axis == axis);
    }
  }

  SUBCASE("an axis jet in an away entry is a witness") {
    Connection c = lemniscate(ctx);
    c.set(0, 1, 1, ctx.jet(0, 0) * ctx.jet(0, 1));
    Slice s = make_slice(ctx, ones_and_zeros(2, 0), ones_and_zeros(2, 0));
    CompatibilityReport rep = check_compatibility(c, s);
    CHECK_FALSE(rep.compatible);
    REQUIRE(rep.witnesses.size() == 1);
    CHECK(rep.witnesses[0] == std::array<int, 4>{0, 0, 1, 1});
    CHECK_THROWS_WITH_AS(d_minus_frame(c, s),
                         doctest::Contains("F[r][th][th]"), DomainError&);
  }

  SUBCASE("a bent phi is rejected until the chart is adapted") {
    Connection c = lemniscate(ctx);
    Slice s = make_slice(ctx, {make_num(2) * ctx.x(0), make_num(0)},
                         ones_and_zeros(2, 0));
    CHECK_THROWS_AS(check_compatibility(c, s), DomainError&);
  }
}

TEST_CASE("the field-free frame ignores the choice of v") {
  JetContext ctx({"x", "z", "w"}, {"u", "q"});
  Prng rng(23);
  Connection c = compatible_connection(ctx, rng);

  std::vector<std::vector<Expr>> vs = {
      {make_num(1), make_num(0), make_num(0)},
      {make_num(1), make_num(2), make_num(-1)},
      {make_num(1), ctx.x(1), ctx.x(0) * ctx.x(2)},
  };

  std::vector<Expr> phi = ones_and_zeros(3, 0);
  std::vector<HTable> tables;
  for (const auto& v : vs) {
    SplitFrame fr = d_minus_frame(c, make_slice(ctx, phi, v));
    tables.push_back(fr.H);
  }
  for (std::size_t k = 1; k < tables.size(); ++k)
    for (std::size_t e = 0; e < tables[0].h.size(); ++e)
      check_zero(tables[k].h[e] - tables[0].h[e]);

  // Membership: the lifted fields solve every annihilator equation.
  Slice s0 = make_slice(ctx, phi, vs[0]);
  SplitFrame fr = d_minus_frame(c, s0);
  AnnihilatorForms psi = annihilator_forms(c, s0);
  for (const VectorField& h : fr.h_fields)
    for (const DiffForm& p : psi.psi) check_zero(interior(h, p));

  // And the joint span has full rank m + n at sampled points.
  Prng sample_rng(kDefaultSeed);
  std::vector<JetPoint> pts = sample_points(ctx, c.entries(), 3, sample_rng);
  for (const JetPoint& p : pts) {
    Mat rows(ctx.dim());
    int r = 0;
    for (const VectorField& f : fr.h_fields) {
      for (int d = 0; d < ctx.dim(); ++d) rows.at(r, d) = eval(f.comp[d], p);
      ++r;
    }
    for (const VectorField& f : fr.gamma) {
      for (int d = 0; d < ctx.dim(); ++d) rows.at(r, d) = eval(f.comp[d], p);
      ++r;
    }
    CHECK(rank(rows, kRankThreshold) == ctx.n() + ctx.m());
  }
}

TEST_CASE("base metrics invert and validate") {
  JetContext ctx({"t", "th"}, {"r"});

  SUBCASE("adjugate inverse, symbolic entries") {
    Expr th = ctx.x(1);
    BaseMetric g = make_base_metric(
        ctx, {make_num(1) + th * th, th, th, make_num(1)});
    check_zero(g.upper(0, 0) - make_num(1));
    check_zero(g.upper(0, 1) + th);
    check_zero(g.upper(1, 1) - make_num(1) - th * th);
  }

  SUBCASE("three dimensional diagonal") {
    JetContext ctx3({"x", "z", "w"}, {"u"});
    Expr f = make_num(1) + ctx3.x(0) * ctx3.x(0);
    BaseMetric g = make_base_metric(
        ctx3, {make_num(1), make_num(0), make_num(0),
               make_num(0), f, make_num(0),
               make_num(0), make_num(0), make_num(2)});
    check_zero(g.upper(0, 0) - make_num(1));
    check_zero(g.upper(1, 1) * f - make_num(1));
    check_zero(g.upper(2, 2) - make_num(1, 2));
    check_zero(g.upper(0, 1));
    check_zero(g.upper(1, 2));
  }

  SUBCASE("rejections") {
    CHECK_THROWS_AS(make_base_metric(ctx, {make_num(1), make_num(1),
                                           make_num(0), make_num(1)}),
                    DomainError&);  // not symmetric
    CHECK_THROWS_AS(make_base_metric(ctx, {make_num(1), make_num(1),
                                           make_num(1), make_num(1)}),
                    DomainError&);  // singular
    CHECK_THROWS_AS(make_base_metric(ctx, {ctx.y(0), make_num(0),
                                           make_num(0), make_num(1)}),
                    DomainError&);  // fibre coordinate in an entry
    CHECK_THROWS_AS(
        make_base_metric(ctx,
                         {make_num(1), make_num(0), make_num(0), make_num(1)},
                         {make_num(1), make_num(0), make_num(0), make_num(2)}),
        DomainError&);  // supplied inverse fails the product check
  }
}

TEST_CASE("a metric stands in when no compatible form exists") {
  JetContext ctx({"t", "th"}, {"u"});
  Expr u = ctx.y(0), ut = ctx.jet(0, 0), uth = ctx.jet(0, 1);

  // The away entry depends on the axis jet, so no splitting exists without
  // extra data.
  Connection c(ctx);
  c.set(0, 0, 0, make_num(-1) * u);
  c.set(0, 0, 1, uth * uth);
  c.set(0, 1, 1, ut * uth);
  std::vector<Expr> phi = ones_and_zeros(2, 0);
  CHECK_FALSE(check_compatibility(
                  c, make_slice(ctx, phi, ones_and_zeros(2, 0)))
                  .compatible);

  // Unit against phi: the inverse has g^{00} = 1 by construction.
  Expr th = ctx.x(1);
  BaseMetric g = make_base_metric(
      ctx, {make_num(1) + th * th, th, th, make_num(1)});
  SplitFrame fr = metric_reduction(c, phi, g);

  // The reduction is the first order splitting for v = raised phi.
  Slice s = make_slice(ctx, phi, {make_num(1), make_num(-1) * th});
  HTable want = horizontal_coefficients(c, s);
  for (std::size_t e = 0; e < want.h.size(); ++e)
    check_zero(fr.H.h[e] - want.h[e]);

  // The contracted annihilator combinations vanish on the reduced frame.
  // With b^p = g^{0p} they read psi_00 - b^p b^q psi_pq and
  // psi_0p + b^q psi_pq, double sums unrestricted.
  AnnihilatorForms psi = annihilator_forms(c, s);
  Expr b = g.upper(0, 1);
  DiffForm axis_comb = psi.at(0, 0, 0) - b * b * psi.at(0, 1, 1);
  DiffForm away_comb = psi.at(0, 0, 1) + b * psi.at(0, 1, 1);
  for (const DiffForm& p : {axis_comb, away_comb}) {
    check_zero(interior(fr.h_fields[0], p));
    check_zero(interior(fr.gamma[0], p));
    check_zero(interior(fr.gamma[1], p));
  }

  SUBCASE("euclidean metric on the lemniscate") {
    JetContext lctx({"t", "th"}, {"r"});
    Connection lc = lemniscate(lctx);
    BaseMetric id = make_base_metric(
        lctx, {make_num(1), make_num(0), make_num(0), make_num(1)});
    SplitFrame lfr = metric_reduction(lc, ones_and_zeros(2, 0), id);
    Expr r = lctx.y(0), rth = lctx.jet(0, 1);
    check_zero(lfr.H.at(0, 0, 0));
    check_zero(lfr.H.at(0, 0, 1) - rth / r);
  }

  SUBCASE("a non-unit metric is rejected") {
    CHECK_THROWS_AS(
        metric_reduction(c, phi,
                         make_base_metric(ctx, {make_num(2), make_num(0),
                                                make_num(0), make_num(1)})),
        DomainError&);
  }
}

TEST_CASE("a constant one-form can be brought to an axis") {
  JetContext ctx({"t", "th"}, {"r"});
  Connection c = lemniscate(ctx);
  Expr r = ctx.y(0), rt = ctx.jet(0, 0), rth = ctx.jet(0, 1);

  Slice s = make_slice(ctx, {make_num(1), make_num(1)}, ones_and_zeros(2, 0));
  AdaptedChart ad = adapt_chart(c, s);
  CHECK(ad.axis == 0);
  CHECK(adapted_axis(ctx, ad.slice.phi) == 0);
  check_zero(ad.slice.v[0] - make_num(1));
  check_zero(ad.slice.v[1]);

  // Hand values: with x'^0 = t + th the first entry is untouched while the
  // mixed one picks up F_00 through the jacobian and the shifted jet.
  check_zero(ad.connection.at(0, 0, 0) + r);
  check_zero(ad.connection.at(0, 0, 1) - r - rt * (rth + rt) / r);

  // Transport oracle: for scalars G, the old equation fields pushed through
  // the chart agree with the new ones, T(Gamma_k G) = (dx'^i/dx^k) Gamma'_i(T G).
  auto rewrite = [&](const Expr& e) {
    Expr out = subst(e, ctx.dir_symbol(ctx.dir_x(0)), ctx.x(0) - ctx.x(1));
    return subst(out, ctx.dir_symbol(ctx.dir_jet(0, 1)),
                 ctx.jet(0, 1) + ctx.jet(0, 0));
  };
  Prng rng(31);
  std::vector<Expr> coords;
  for (int a = 0; a < ctx.dim(); ++a) coords.push_back(ctx.coord(a));
  for (int trial = 0; trial < 3; ++trial) {
    Expr G = random_poly(rng, coords, 3);
    Expr tg = rewrite(G);
    for (int k = 0; k < 2; ++k) {
      Expr lhs = rewrite(directional(ctx, gamma_field(c, k), G));
      // forward jacobian rows: dx'^0/dx^k = phi_k, dx'^1/dx^k = delta.
      Expr rhs = directional(ctx, gamma_field(ad.connection, 0), tg);
      if (k == 1)
        rhs = rhs + directional(ctx, gamma_field(ad.connection, 1), tg);
      check_zero(lhs - rhs);
    }
  }

  SUBCASE("scaled components and a rational axis coefficient") {
    Slice s2 = make_slice(ctx, {make_num(2), make_num(3)},
                          {make_num(1, 2), make_num(0)});
    AdaptedChart ad2 = adapt_chart(c, s2);
    CHECK(ad2.axis == 0);
    CHECK(adapted_axis(ctx, ad2.slice.phi) == 0);

    auto rewrite2 = [&](const Expr& e) {
      Expr out = subst(e, ctx.dir_symbol(ctx.dir_x(0)),
                       (ctx.x(0) - make_num(3) * ctx.x(1)) * make_num(1, 2));
      out = subst(out, ctx.dir_symbol(ctx.dir_jet(0, 0)),
                  make_num(2) * ctx.jet(0, 0));
      return subst(out, ctx.dir_symbol(ctx.dir_jet(0, 1)),
                   ctx.jet(0, 1) + make_num(3) * ctx.jet(0, 0));
    };
    Expr G = random_poly(rng, coords, 3);
    Expr tg = rewrite2(G);
    for (int k = 0; k < 2; ++k) {
      Expr lhs = rewrite2(directional(ctx, gamma_field(c, k), G));
      Expr rhs = make_num(k == 0 ? 2 : 3) *
                 directional(ctx, gamma_field(ad2.connection, 0), tg);
      if (k == 1)
        rhs = rhs + directional(ctx, gamma_field(ad2.connection, 1), tg);
      check_zero(lhs - rhs);
    }
  }

  SUBCASE("a bent phi is refused") {
    Slice s3 = make_slice(ctx, {make_num(2) * ctx.x(0), make_num(0)},
                          ones_and_zeros(2, 0));
    CHECK_THROWS_AS(adapt_chart(c, s3), DomainError&);
  }
}

#include "jetcurv/zero_test.hpp"

#include <cmath>

namespace jetcurv {

namespace {

struct PointSample {
  double value = 0.0;
  double scale = 0.0;
};

// One attempt at evaluating e at a random point. Returns false when the
// point must be rejected (near-pole or outside a function's domain).
bool try_point(const Expr& e, const std::vector<SymbolId>& syms, Prng& rng,
               const ZeroOptions& opts, PointSample& out) {
  EvalEnv env(syms.empty() ? 1 : syms.back() + 1);
  for (SymbolId id : syms) env.set(id, rng.uniform(opts.box_lo, opts.box_hi));
  ProbeStats stats;
  double value = 0.0, scale = 0.0;
  try {
    if (e.kind() == Kind::Sum) {
      for (const Expr& t : e.kids()) {
        double mv = eval(t, env, &stats);
        value += mv;
        scale = std::max(scale, std::fabs(mv));
      }
    } else {
      value = eval(e, env, &stats);
      scale = std::fabs(value);
    }
  } catch (const EvalDomainError&) {
    return false;
  }
  if (!std::isfinite(value) || !std::isfinite(scale)) return false;
  if (stats.min_denom < opts.min_denom) return false;
  out = {value, scale};
  return true;
}

}  // namespace

ZeroResult is_zero(const Expr& e, Prng& rng, const ZeroOptions& opts) {
  if (e.is_num()) return {e.is_zero_literal(), ZeroTier::Symbolic};
  std::vector<SymbolId> syms = free_symbols(e);
  for (int p = 0; p < opts.points; ++p) {
    PointSample sample;
    int attempts = 0;
    while (!try_point(e, syms, rng, opts, sample)) {
      if (++attempts > opts.max_resample)
        throw ProbeError("no valid probe point after " +
                         std::to_string(opts.max_resample) +
                         " resamples for: " + print(e));
    }
    if (std::fabs(sample.value) > opts.tol * (1.0 + sample.scale))
      return {false, ZeroTier::Numeric};
  }
  return {true, ZeroTier::Numeric};
}

ZeroResult is_zero(const Expr& e, const ZeroOptions& opts) {
  if (e.is_num()) return {e.is_zero_literal(), ZeroTier::Symbolic};
  Prng rng(opts.seed);
  return is_zero(e, rng, opts);
}

}  // namespace jetcurv

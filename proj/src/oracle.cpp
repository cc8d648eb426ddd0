#include "jetcurv/oracle.hpp"

#include "jetcurv/zero_test.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace jetcurv {

std::vector<JetPoint> sample_points(const JetContext& ctx,
                                    const std::vector<Expr>& guards, int count,
                                    Prng& rng, const SampleOptions& opts) {
  std::vector<JetPoint> out;
  out.reserve(count);
  std::string last_trouble;
  for (int k = 0; k < count; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt <= opts.max_resample && !placed; ++attempt) {
      JetPoint p(static_cast<int>(ctx.symbols().size()));
      for (int a = 0; a < ctx.dim(); ++a)
        p.set(ctx.dir_symbol(a), rng.uniform(opts.box_lo, opts.box_hi));
      bool ok = true;
      for (const Expr& g : guards) {
        try {
          ProbeStats stats;
          eval(g, p, &stats);
          if (stats.min_denom < opts.min_denom) {
            last_trouble = "denominator within " + std::to_string(opts.min_denom) +
                           " of zero";
            ok = false;
            break;
          }
        } catch (const EvalDomainError& err) {
          last_trouble = err.what();
          ok = false;
          break;
        }
      }
      if (ok) {
        out.push_back(std::move(p));
        placed = true;
      }
    }
    if (!placed)
      throw ProbeError("no valid sample point after resampling: " + last_trouble);
  }
  return out;
}

Mat identity_mat(int n) {
  Mat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat mat_mul(const Mat& x, const Mat& y) {
  Mat out(x.n);
  for (int r = 0; r < x.n; ++r)
    for (int k = 0; k < x.n; ++k) {
      double v = x.at(r, k);
      if (v == 0.0) continue;
      for (int c = 0; c < x.n; ++c) out.at(r, c) += v * y.at(k, c);
    }
  return out;
}

Mat mat_sub(const Mat& x, const Mat& y) {
  Mat out(x.n);
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = x.a[i] - y.a[i];
  return out;
}

double inf_norm(const Mat& x) {
  double best = 0.0;
  for (int r = 0; r < x.n; ++r) {
    double row = 0.0;
    for (int c = 0; c < x.n; ++c) row += std::abs(x.at(r, c));
    if (row > best) best = row;
  }
  return best;
}

double trace(const Mat& x) {
  double t = 0.0;
  for (int i = 0; i < x.n; ++i) t += x.at(i, i);
  return t;
}

Mat assemble(const VectorValuedForm& A, const JetPoint& p) {
  if (A.degree != 1) throw DimensionError("assemble needs a degree-1 form");
  Mat out(A.dim);
  for (int r = 0; r < A.dim; ++r)
    for (int c = 0; c < A.dim; ++c) out.at(r, c) = eval(A.at(r, c), p);
  return out;
}

int rank(Mat x, double threshold) {
  int r = 0;
  for (int col = 0; col < x.n && r < x.n; ++col) {
    int best = -1;
    double best_abs = threshold;
    for (int row = r; row < x.n; ++row) {
      double v = std::abs(x.at(row, col));
      if (v >= best_abs) {
        best_abs = v;
        best = row;
      }
    }
    if (best < 0) continue;
    if (best != r)
      for (int c = col; c < x.n; ++c) std::swap(x.at(r, c), x.at(best, c));
    double piv = x.at(r, col);
    for (int row = r + 1; row < x.n; ++row) {
      double f = x.at(row, col) / piv;
      if (f == 0.0) continue;
      for (int c = col; c < x.n; ++c) x.at(row, c) -= f * x.at(r, c);
    }
    ++r;
  }
  return r;
}

double fd_audit(const Expr& e, SymbolId s, const std::vector<JetPoint>& points,
                double step) {
  Expr de = diff(e, s);
  double worst = 0.0;
  for (const JetPoint& p : points) {
    double x0 = p.get(s);
    JetPoint shifted = p;
    shifted.set(s, x0 + step);
    double fp = eval(e, shifted);
    shifted.set(s, x0 - step);
    double fm = eval(e, shifted);
    double numeric = (fp - fm) / (2.0 * step);
    double exact = eval(de, p);
    double rel = std::abs(numeric - exact) / (1.0 + std::abs(exact));
    if (rel > worst) worst = rel;
  }
  return worst;
}

MatrixCheckReport eigen_spectrum_report(const Mat& L, int m, double tol,
                                        double rank_threshold) {
  MatrixCheckReport rep;
  Mat l2 = mat_mul(L, L);
  rep.cube_gap = inf_norm(mat_sub(mat_mul(l2, L), L));
  rep.trace_l = trace(L);
  rep.trace_l2 = trace(l2);
  rep.rank_l = rank(L, rank_threshold);
  Mat shifted = L;
  for (int i = 0; i < L.n; ++i) shifted.at(i, i) -= 1.0;
  rep.rank_minus = rank(shifted, rank_threshold);
  for (int i = 0; i < L.n; ++i) shifted.at(i, i) += 2.0;
  rep.rank_plus = rank(std::move(shifted), rank_threshold);

  rep.cube_ok = rep.cube_gap <= tol;
  rep.trace_ok = std::abs(rep.trace_l) <= tol;
  rep.trace2_ok = std::abs(rep.trace_l2 - 2.0 * m) <= tol;
  rep.rank_ok = rep.rank_l == 2 * m && rep.rank_minus == L.n - m &&
                rep.rank_plus == L.n - m;
  return rep;
}

}  // namespace jetcurv

#pragma once

#include "jetcurv/forms.hpp"
#include "jetcurv/rng.hpp"

#include <vector>

namespace jetcurv {

// A full numeric coordinate assignment on the jet manifold.
using JetPoint = EvalEnv;

struct SampleOptions {
  double box_lo = 0.25;
  double box_hi = 1.75;
  double min_denom = 1e-3;  // reject points this close to a pole
  int max_resample = 10;
};

// Draws points with every coordinate uniform in the box. A point is rejected
// and redrawn when any guard expression raises a domain error or evaluates
// within min_denom of a pole; persistent rejection raises ProbeError.
std::vector<JetPoint> sample_points(const JetContext& ctx,
                                    const std::vector<Expr>& guards, int count,
                                    Prng& rng, const SampleOptions& opts = {});

// Dense square matrix, row major. Dimensions here stay tiny (n+m+nm <= ~50)
// so there is no sparsity or pivot bookkeeping beyond what rank() needs.
struct Mat {
  int n = 0;
  std::vector<double> a;

  Mat() = default;
  explicit Mat(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
};

Mat identity_mat(int n);
Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_sub(const Mat& x, const Mat& y);
double inf_norm(const Mat& x);  // max absolute row sum
double trace(const Mat& x);

// Numeric matrix of a degree-1 vector valued form at a point; row indexes
// the output direction, column the contracted frame direction.
Mat assemble(const VectorValuedForm& A, const JetPoint& p);

// Rank by elimination with partial pivoting; pivots below the threshold
// count as zero. Entries are expected O(1) from the sampling box.
int rank(Mat x, double threshold);

// Max over the points of
//   |central difference of e along s  -  eval(diff(e, s))| / (1 + |eval|).
double fd_audit(const Expr& e, SymbolId s, const std::vector<JetPoint>& points,
                double step = 1e-6);

inline constexpr double kEigenTol = 1e-8;
inline constexpr double kRankThreshold = 1e-8;

// Spectrum certificate for an operator expected to satisfy L^3 = L with
// eigenvalues 0, +1, -1 of multiplicities dim-2m, m, m. The annihilation
// gap, the two traces and the three ranks pin those multiplicities without
// an eigensolver.
struct MatrixCheckReport {
  double cube_gap = 0.0;  // ‖L³−L‖∞
  double trace_l = 0.0;
  double trace_l2 = 0.0;
  int rank_l = 0;
  int rank_minus = 0;  // rank(L − I)
  int rank_plus = 0;   // rank(L + I)
  bool cube_ok = false;
  bool trace_ok = false;
  bool trace2_ok = false;
  bool rank_ok = false;

  bool pass() const { return cube_ok && trace_ok && trace2_ok && rank_ok; }
};

MatrixCheckReport eigen_spectrum_report(const Mat& L, int m,
                                        double tol = kEigenTol,
                                        double rank_threshold = kRankThreshold);

}  // namespace jetcurv

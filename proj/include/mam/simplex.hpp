#pragma once

#include "mam/linalg.hpp"

namespace mam {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Vec x;
  double objective = 0.0;
  /// Optimal phase-1 value: the smallest L1 residual |Ax - b|_1 over x >= 0.
  double infeasibility = 0.0;
};

/// Dense two-phase simplex for  min c.x  s.t.  A x = b, x >= 0.
/// Bland's rule throughout, so it terminates on degenerate problems.
/// The problem is declared feasible when the phase-1 optimum is <= feas_tol.
LpResult solve_lp(const Mat& a, const Vec& b, const Vec& c, double feas_tol = 1e-9);

/// Phase 1 only: minimal L1 residual of A x = b over x >= 0.
double lp_infeasibility(const Mat& a, const Vec& b);

/// L1 distance from the origin to the convex hull of the columns of `points`,
/// computed as the LP  min sum(p + q)  s.t.  P t + p - q = 0, sum t = 1.
double hull_l1_distance(const Mat& points);

}  // namespace mam

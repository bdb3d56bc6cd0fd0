#pragma once

#include "mam/variety.hpp"

#include <optional>
#include <vector>

namespace mam {

/// a . t = b  (equalities) or  a . t <= b  (inequalities).
struct LinearConstraint {
  Vec a;
  double b = 0.0;
};

struct PolytopeDescription {
  int ambient_dim = 0;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> inequalities;
  /// Populated when the affine dimension is at most kMaxVertexDim.
  std::optional<std::vector<Vec>> vertices;
  int dim = -1;  // -1 when empty
  bool empty = false;
  double infeasibility = 0.0;  // phase-1 residual of the equality system
};

inline constexpr int kMaxVertexDim = 8;

/// The w-block of a mixed-general point.
std::vector<cplx> moment_map(const Configuration& cfg, const VarietyPoint& pt);

struct BigMoment {
  std::vector<cplx> w;
  Vec t;  // |z_j|^2
};
BigMoment big_moment_map(const Configuration& cfg, const VarietyPoint& pt);

/// Largest violation of  t >= 0,  sum_j t_j lambda^k_j = -w_k^2,
/// sum |w_k|^2 + sum t_j = 1.
double big_moment_violation(const Configuration& cfg, const BigMoment& bm);

/// {t >= 0, sum_j t_j c lambda_j = 0, sum t_j = 1}. Throws StructuralError for an
/// inadmissible configuration and std::logic_error
/// if the LP still reports infeasibility (an internal inconsistency).
PolytopeDescription gale_transform(const Configuration& cfg, double c = 1.0);

/// {t >= 0, sum_j t_j lambda_j = -w^2 (componentwise), sum t_j = 1 - sum |w_k|^2}.
/// Requires sum |w_k|^2 < 1.
PolytopeDescription fiber_polytope(const Configuration& cfg, const std::vector<cplx>& w);

/// Phase-1 residual of the fiber polytope's equality system; <= 1e-9 means nonempty.
double fiber_infeasibility(const Configuration& cfg, const std::vector<cplx>& w);

/// Largest constraint violation of t.
double polytope_violation(const PolytopeDescription& p, const Vec& t);

/// w in c H(Lambda), by LP.
bool in_scaled_hull(const Configuration& cfg, const std::vector<cplx>& w, double c,
                    double tol = kDefaultFeasTol);

struct CEstimate {
  double c = 1.0;
  VarietyPoint argmin;
  /// Running minimum of sum |z_j|^2 over the samples, before refinement.
  std::vector<double> running_min;
  double sample_min = 1.0;
  int descent_steps = 0;
};

/// Upper estimate of c = inf sum |z_j|^2: best sample, then projected gradient
/// descent of sum |z_j|^2 along the variety.
CEstimate estimate_c(const Configuration& cfg, const std::vector<VarietyPoint>& samples,
                     int max_descent_steps = 200, const SolverOptions& opts = {});

struct StarViolation {
  int sample = 0;
  double r = 0.0;
  double infeasibility = 0.0;
};

struct StarShapedReport {
  bool ok = true;
  int rays = 0;
  int steps = 0;
  int checks = 0;
  std::vector<StarViolation> violations;
};

/// For every sample's w and r = i / ray_steps (i = 0..ray_steps), checks that
/// the fiber polytope over r w is nonempty.
StarShapedReport star_shaped_check(const Configuration& cfg,
                                   const std::vector<VarietyPoint>& samples, int ray_steps);

}  // namespace mam

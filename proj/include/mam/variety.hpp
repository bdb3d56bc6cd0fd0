#pragma once

#include "mam/config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mam {

/// A certified point on the variety cut out by `cfg` and the unit sphere.
struct VarietyPoint {
  Vec coordinates;  // realified (w, z)
  double residual_inf_norm = 0.0;
  int jacobian_real_rank = 0;
  /// Orthonormal, oriented basis of the tangent space (ambient_dim x tangent_dim).
  Mat tangent_frame;
  /// mixed-general: indices k with w_k pinned to 0; mixed-m1: {0} when the
  /// point was sampled on the null-square-sum stratum.
  std::vector<int> zero_pattern;
  int iterations = 0;
};

/// Extra constraints defining a stratum of a mixed-type variety.
struct Stratum {
  /// w-coordinates held at exactly 0.
  std::vector<int> pinned_w;
  /// Append sum_r w_r^2 = 0 (real and imaginary parts) to the system.
  bool null_square_sum = false;
};

struct SolverOptions {
  double tol = 1e-10;  // certification bound on the residual inf-norm
  int max_iter = 100;
  int max_halvings = 30;
  double rank_tol = kDefaultRankTol;
  int max_attempts = 20;  // per sample index
  double duplicate_tol = 1e-6;
};

/// Residuals: (Re G_k, Im G_k)_k then rho - 1 (mixed-m1: Re F, Im F, rho - 1).
Vec evaluate_system(const Configuration& cfg, const Vec& x);
/// Real Jacobian of evaluate_system (equation_count x ambient_dim).
Mat system_jacobian(const Configuration& cfg, const Vec& x);

/// The quadric part of the residual (everything but rho - 1).
Vec quadric_residuals(const Configuration& cfg, const Vec& x);

enum class ProjectionStatus { converged, not_converged, singular_point };
std::string to_string(ProjectionStatus s);

struct ProjectionResult {
  ProjectionStatus status = ProjectionStatus::not_converged;
  VarietyPoint point;     // valid when converged
  Vec last_iterate;
  double last_residual = 0.0;
  int iterations = 0;
  bool ok() const { return status == ProjectionStatus::converged; }
};

/// Gauss-Newton (minimum-norm steps, backtracking by halving) onto the
/// variety, optionally restricted to a stratum. A limit is certified only when
/// the residual is within tol, the Jacobian has full rank, and the
/// Kantorovich quantity L |r| / sigma_min^2 is at most 1/2; a limit that meets
/// the residual bound but not the regularity tests is a singular point.
ProjectionResult project_to_variety(const Configuration& cfg, const Vec& start,
                                    const SolverOptions& opts = {},
                                    const Stratum& stratum = {});

/// Fills residual, rank and the oriented tangent frame for a point assumed to
/// be on the variety. Throws std::runtime_error when the Jacobian is singular.
VarietyPoint certify_point(const Configuration& cfg, const Vec& x,
                           const SolverOptions& opts = {});

/// Tangent frame orientation: det [J^T | frame] > 0.
double frame_orientation(const Mat& jacobian, const Mat& frame);

/// Not every sample index could be certified within the retry budget.
class PartialSampleError : public std::runtime_error {
 public:
  PartialSampleError(int requested, int succeeded);
  int requested;
  int succeeded;
};

/// Gaussian ambient starts projected onto the variety. Sample i is a pure
/// function of (seed, i); the OpenMP and serial versions agree exactly.
std::vector<VarietyPoint> sample_points(const Configuration& cfg, int count,
                                        std::uint64_t seed, const SolverOptions& opts = {});
std::vector<VarietyPoint> sample_points_serial(const Configuration& cfg, int count,
                                               std::uint64_t seed,
                                               const SolverOptions& opts = {});

/// Points on a stratum: mixed-general pins w_k = 0 for k in K. For mixed-m1 an
/// empty pattern imposes sum w_r^2 = 0 (for s = 1 that is w_1 = 0, pinned
/// directly) and the full pattern {0, ..., s-1} pins every w_r.
std::vector<VarietyPoint> sample_with_zero_pattern(const Configuration& cfg,
                                                   const std::vector<int>& pattern, int count,
                                                   std::uint64_t seed,
                                                   const SolverOptions& opts = {});
std::vector<VarietyPoint> sample_with_zero_pattern_serial(const Configuration& cfg,
                                                          const std::vector<int>& pattern,
                                                          int count, std::uint64_t seed,
                                                          const SolverOptions& opts = {});

/// Number of z_j with |z_j| > tol.
int nonzero_coordinate_count(const Configuration& cfg, const Vec& x, double tol = 1e-8);

/// Complex views of the two blocks.
std::vector<cplx> w_block(const Configuration& cfg, const Vec& x);
std::vector<cplx> z_block(const Configuration& cfg, const Vec& x);

}  // namespace mam

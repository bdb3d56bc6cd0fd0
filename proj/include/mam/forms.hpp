#pragma once

#include "mam/variety.hpp"

#include <string>
#include <vector>

namespace mam {

/// alpha = 2 sum weight (x dy - y dx) over every complex coordinate, evaluated
/// at x on the ambient vector v.
double eval_alpha(const Configuration& cfg, const Vec& x, const Vec& v);
/// d alpha (u, v) = 4 sum weight (u_x v_y - u_y v_x).
double eval_dalpha(const Configuration& cfg, const Vec& u, const Vec& v);

/// alpha at x as an ambient covector.
Vec alpha_covector(const Configuration& cfg, const Vec& x);
/// d alpha as a constant ambient skew matrix.
Mat dalpha_matrix(const Configuration& cfg);

struct FormEvaluation {
  Vec alpha_on_frame;
  Mat dalpha_on_frame;
  int ker_dalpha_dim = 0;
  int ker_alpha_cap_ker_dalpha_dim = 0;
  /// alpha ^ (d alpha)^k on the point's oriented tangent frame, uncalibrated.
  double contact_volume = 0.0;
  int rank_dalpha_on_ker_alpha = 0;
  /// Some singular value sat within 10x of a rank threshold.
  bool indeterminate = false;
  /// Ambient bases of ker d alpha|T and of ker alpha cap ker d alpha.
  Mat ker_dalpha_basis;
  Mat common_kernel_basis;
};

FormEvaluation kernel_analysis(const Configuration& cfg, const VarietyPoint& pt,
                               double rank_tol = kDefaultRankTol);

/// Parameters (T_1, ..., T_q, mu) of the kernel family; q = 1 for mixed-m1.
struct KernelParams {
  std::vector<cplx> T;
  double mu = 0.0;
};

struct KernelVector {
  KernelParams params;
  Vec ambient_vector;
};

/// Componentwise closed form
///   w_r: -i (2 conj(T_r) conj(w_r) + mu w_r) / a_r   (mixed-m1 uses the single T)
///   z_j: -i (2 Re(sum_k T_k lambda^k_j) + mu) z_j / b_j
KernelVector closed_form_kernel_vector(const Configuration& cfg, const Vec& x,
                                       const KernelParams& params);

/// mixed-m1 off the null-square-sum locus: T = t conj(S), mu = -2 t sum |w_r|^2 / a_r
/// with S = sum w_r^2 / a_r.
KernelParams mixed_m1_offstratum_params(const Configuration& cfg, const Vec& x, double t);
/// mixed-general: T_k = -mu conj(w_k) / (2 w_k) where w_k != 0, free_T[k] elsewhere.
KernelParams mixed_general_params(const Configuration& cfg, const Vec& x, double mu,
                                  const std::vector<cplx>& free_T, double zero_tol = 1e-12);

/// Ambient basis of the closed-form family restricted to parameters that keep
/// the vector tangent to the variety. With common_only the family is further
/// cut down to alpha(v) = 0.
Mat closed_form_kernel_basis(const Configuration& cfg, const VarietyPoint& pt,
                             bool common_only = false, double rank_tol = kDefaultRankTol);

/// Threshold below which |contact volume| counts as zero: 1e-9 k! (max weight)^k.
double contact_volume_threshold(const Configuration& cfg, int frame_dim);

enum class VolumeSign { positive, negative, zero, borderline };
std::string to_string(VolumeSign s);
VolumeSign classify_volume(double value, double threshold);

/// Sign (+1 or -1) making contact_volume positive at a deterministic reference
/// point of the w != 0 stratum. Classical configurations return +1.
int orientation_calibration(const Configuration& cfg, std::uint64_t seed = 0,
                            const SolverOptions& opts = {});

/// alpha ^ (d alpha)^k on the oriented frame, times the calibration sign.
double contact_volume(const Configuration& cfg, const VarietyPoint& pt, int calibration = 1);

enum class RankClass { contact, defect2, deep };
std::string to_string(RankClass c);

struct RankTrichotomy {
  RankClass cls = RankClass::deep;
  int rank = 0;      // rank of d alpha on ker alpha
  int perp_dim = 0;  // 2k, 2 or 0
  /// contact: ker alpha; defect2: ker alpha cap ker d alpha; deep: empty.
  Mat perp_basis;
  bool indeterminate = false;
};

RankTrichotomy rank_trichotomy(const Configuration& cfg, const VarietyPoint& pt,
                               double rank_tol = kDefaultRankTol);

/// The 2m vectors v(T, 0) with T running over 1 and i in each slot.
Mat leaf_vectors(const Configuration& cfg, const Vec& x);
/// Dimension of the span of leaf_vectors.
int leaf_span_dimension(const Configuration& cfg, const VarietyPoint& pt,
                        double rank_tol = kDefaultRankTol);
/// Rank of d alpha restricted to the span of leaf_vectors.
int symplectic_leaf_rank(const Configuration& cfg, const VarietyPoint& pt,
                         double rank_tol = kDefaultRankTol);

}  // namespace mam

#pragma once

#include "mam/variety.hpp"

#include <vector>

namespace mam {

/// Element of (S^1)^n x (Z/2)^m x R^{2m}.
struct GroupElement {
  std::vector<cplx> torus;  // unit phases u_j
  std::vector<int> signs;   // +1 or -1
  std::vector<cplx> flow;   // T_1, ..., T_m
  /// Throws StructuralError when a phase is off the unit circle or a sign is not +-1.
  void validate(const Configuration& cfg) const;
};

/// z_j -> u_j z_j (w untouched); the result is re-certified.
VarietyPoint torus_act(const Configuration& cfg, const std::vector<cplx>& phases,
                       const VarietyPoint& pt, const SolverOptions& opts = {});

/// w_k -> sigma_k w_k on a mixed-general point; re-certified.
VarietyPoint sign_act(const Configuration& cfg, const std::vector<int>& signs,
                      const VarietyPoint& pt, const SolverOptions& opts = {});

/// z_j -> exp(-2i Re(sum_k T_k lambda^k_j)) z_j on a classical point; re-certified.
VarietyPoint foliation_flow(const Configuration& cfg, const VarietyPoint& pt,
                            const std::vector<cplx>& T, const SolverOptions& opts = {});

/// Normalized z-block of a mixed-general point, realified (length 2n).
Vec branched_cover(const Configuration& cfg, const VarietyPoint& pt);

/// F_k(z) = sum_j lambda^k_j |z_j|^2 for a realified z in C^n.
std::vector<cplx> quadric_values(const Configuration& cfg, const Vec& z);

/// Radius r with r^2 (1 + sum_k |F_k(z)|) = 1, found by bisection on [0, 1].
double ray_radius(const Configuration& cfg, const Vec& z);

struct FiberCount {
  int count = 0;
  double radius = 0.0;
  std::vector<cplx> F;
  std::vector<int> branch_slots;  // k with |F_k| <= tol
  bool near_branch = false;       // some tol < |F_k| <= 10 tol
};

/// Preimage count of the branched cover over the direction z (a unit vector in
/// C^n, realified): 2 per k with |F_k| > tol, 1 otherwise.
FiberCount fiber_count(const Configuration& cfg, const Vec& z, double tol = 1e-9);

/// Explicit preimages, one per admissible sign choice of w_k = +-sqrt(-r^2 F_k),
/// each certified. Choices closer than 2 sqrt(tol) are merged.
std::vector<VarietyPoint> fiber_preimages(const Configuration& cfg, const Vec& z,
                                          double tol = 1e-9, const SolverOptions& opts = {});

struct IsotropyStratum {
  std::vector<int> K;  // {k : |F_k(z)| <= tol}
  bool consistent = true;  // agrees with {k : |w_k| <= sqrt(tol)}
};

IsotropyStratum isotropy_stratum(const Configuration& cfg, const VarietyPoint& pt,
                                 double tol = 1e-9);

}  // namespace mam

#pragma once

#include "mam/linalg.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mam {

using cplx = std::complex<double>;

/// Realification used everywhere in the toolkit: a complex vector
/// (c_0, ..., c_{k-1}) is stored as (Re c_0, Im c_0, Re c_1, Im c_1, ...).
inline cplx get_c(const Vec& v, Eigen::Index k) { return {v(2 * k), v(2 * k + 1)}; }
inline void set_c(Vec& v, Eigen::Index k, cplx c) {
  v(2 * k) = c.real();
  v(2 * k + 1) = c.imag();
}

/// Malformed input: wrong sizes, non-positive weights, unknown kinds.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Kind { classical, mixed_m1, mixed_general };

std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);

/// n vectors lambda_j in C^m together with the variety kind and the weights of
/// the canonical 1-form.
///
/// Ambient coordinates are X = (w_1, ..., w_p, z_1, ..., z_n) with p = 0
/// (classical), p = s (mixed-m1) or p = m (mixed-general). weights_a weighs the
/// w-block and weights_b the z-block.
struct Configuration {
  int m = 1;
  int n = 0;
  Kind kind = Kind::classical;
  int s = 0;  // mixed-m1 only
  /// 2m x n; column j is the realified lambda_j.
  Mat lambdas;
  std::vector<double> weights_a;
  std::vector<double> weights_b;

  cplx lambda(int k, int j) const { return {lambdas(2 * k, j), lambdas(2 * k + 1, j)}; }

  /// Number of w-coordinates.
  int w_count() const;
  /// Real dimension of the ambient space.
  int ambient_dim() const { return 2 * (w_count() + n); }
  /// Number of real equations cutting out the variety on the sphere.
  int equation_count() const { return kind == Kind::mixed_m1 ? 3 : 2 * m + 1; }
  int tangent_dim() const { return ambient_dim() - equation_count(); }
  double max_weight() const;

  /// Throws StructuralError on dimension mismatches or non-positive weights.
  void validate() const;
  /// Human-readable notes for violated standing hypotheses (n > 3, n > 2m).
  std::vector<std::string> hypothesis_warnings() const;

  /// Sub-configuration keeping only the components k in `rows`.
  Configuration restrict_rows(const std::vector<int>& rows) const;
  /// Sub-configuration keeping only the vectors j in `cols` (kind classical).
  Configuration restrict_vectors(const std::vector<int>& cols) const;
};

/// Classical configuration from complex vectors (outer index j, inner k);
/// weights default to 1.
Configuration make_classical(const std::vector<std::vector<cplx>>& lambdas);
/// m = 1 convenience overload.
Configuration make_classical(const std::vector<cplx>& lambdas);
Configuration make_mixed_m1(const std::vector<cplx>& lambdas, int s);
Configuration make_mixed_general(const std::vector<std::vector<cplx>>& lambdas);

struct AdmissibilityReport {
  bool siegel = false;
  bool weak_hyperbolicity = false;
  /// First 2m-subset (lexicographic) whose hull contains 0, when one exists.
  std::optional<std::vector<int>> violating_subset;
  int hull_dimension = 0;
  /// Some 2m-subset hull passes within 10x of the tolerance; such a
  /// configuration is reported as not admissible.
  bool degenerate = false;
  double min_subset_distance = 0.0;

  bool admissible() const { return siegel && weak_hyperbolicity && !degenerate; }
};

inline constexpr double kDefaultFeasTol = 1e-9;

/// 0 in the convex hull of the lambda_j (as points of R^{2m}).
bool check_siegel(const Configuration& cfg, double tol = kDefaultFeasTol);

/// Weak hyperbolicity over every 2m-subset; subsets are scanned in parallel,
/// the reported witness is the lexicographically first one.
AdmissibilityReport check_weak_hyperbolicity(const Configuration& cfg,
                                             double tol = kDefaultFeasTol);
/// Serial reference for check_weak_hyperbolicity.
AdmissibilityReport check_weak_hyperbolicity_serial(const Configuration& cfg,
                                                    double tol = kDefaultFeasTol);

AdmissibilityReport check_admissible(const Configuration& cfg, double tol = kDefaultFeasTol);

/// Complex rank of the (m+1) x |J| matrix with columns (lambda_j, 1), as half
/// the real rank of its realification.
int check_regularity_rank(const Configuration& cfg, const std::vector<int>& subset,
                          double rank_tol = kDefaultRankTol);

struct MixedAdmissibility {
  bool admissible = false;
  /// Every nonempty K (0-based component indices) whose row restriction
  /// fails admissibility.
  std::vector<std::vector<int>> failing;
};

/// For each nonempty K in {0..m-1}, the configuration of vectors
/// (lambda^k_j)_{k in K} in C^{|K|} must be admissible.
MixedAdmissibility check_mixed_admissible(const Configuration& cfg,
                                          double tol = kDefaultFeasTol);

/// Admissibility appropriate to the kind (mixed-general: all row restrictions).
bool is_admissible_for_kind(const Configuration& cfg, double tol = kDefaultFeasTol);

/// L1 distance from 0 to the hull of the lambda_j, j in subset.
double subset_hull_distance(const Configuration& cfg, const std::vector<int>& subset);

}  // namespace mam

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace mam {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Default relative threshold: a singular value counts toward the rank when it
/// exceeds kDefaultRankTol times the largest singular value.
inline constexpr double kDefaultRankTol = 1e-8;

struct RankInfo {
  int rank = 0;
  /// Some singular value lies within a factor 10 of the threshold on either side.
  bool indeterminate = false;
  Vec singular_values;
};

RankInfo numerical_rank(const Mat& a, double rel_tol = kDefaultRankTol);

/// Orthonormal basis (columns) of the right null space of `a`.
Mat null_space(const Mat& a, double rel_tol = kDefaultRankTol);

/// Orthonormal basis (columns) of the column span of `a`.
Mat column_span(const Mat& a, double rel_tol = kDefaultRankTol);

/// Largest principal angle (radians) between the column spans of `a` and `b`.
/// Spans of different dimension are at angle pi/2.
double largest_principal_angle(const Mat& a, const Mat& b,
                               double rel_tol = kDefaultRankTol);

/// All k-element subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);

}  // namespace mam

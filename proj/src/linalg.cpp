#include "mam/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace mam {

RankInfo numerical_rank(const Mat& a, double rel_tol) {
  RankInfo info;
  if (a.size() == 0) {
    info.singular_values = Vec();
    return info;
  }
  Eigen::JacobiSVD<Mat> svd(a);
  info.singular_values = svd.singularValues();
  const double smax = info.singular_values.size() ? info.singular_values(0) : 0.0;
  if (smax == 0.0) return info;
  const double thr = rel_tol * smax;
  for (Eigen::Index i = 0; i < info.singular_values.size(); ++i) {
    const double s = info.singular_values(i);
    if (s > thr) ++info.rank;
    if (s > thr / 10.0 && s < thr * 10.0) info.indeterminate = true;
  }
  return info;
}

Mat null_space(const Mat& a, double rel_tol) {
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0) return Mat::Identity(cols, cols);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  int rank = 0;
  if (smax > 0.0) {
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * smax) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

Mat column_span(const Mat& a, double rel_tol) {
  if (a.cols() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const Vec& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  int rank = 0;
  if (smax > 0.0) {
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * smax) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

double largest_principal_angle(const Mat& a, const Mat& b, double rel_tol) {
  const Mat qa = column_span(a, rel_tol);
  const Mat qb = column_span(b, rel_tol);
  if (qa.cols() != qb.cols()) return std::numbers::pi / 2.0;
  if (qa.cols() == 0) return 0.0;
  // sin of the largest angle is the norm of the component of span(b) outside span(a)
  const Mat resid = qb - qa * (qa.transpose() * qb);
  Eigen::JacobiSVD<Mat> svd(resid);
  const double s = std::min(1.0, svd.singularValues()(0));
  return std::asin(s);
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace mam

#include "mam/pfaffian.hpp"

#include "mam/config.hpp"

#include <cmath>

namespace mam {

double pfaffian(const Mat& input) {
  if (input.rows() != input.cols()) throw StructuralError("Pfaffian needs a square matrix");
  const Eigen::Index n = input.rows();
  if (n == 0) return 1.0;
  if (n % 2 == 1) return 0.0;
  Mat a = 0.5 * (input - input.transpose());
  double pf = 1.0;
  for (Eigen::Index i = 0; i + 2 < n; ++i) {
    const Eigen::Index len = n - i - 1;
    Vec x = a.col(i).tail(len);
    const double sigma = x.tail(len - 1).squaredNorm();
    double alpha;
    if (sigma == 0.0) {
      alpha = x(0);
    } else {
      const double norm_x = std::sqrt(x(0) * x(0) + sigma);
      Vec v = x;
      if (x(0) <= 0.0) {
        v(0) -= norm_x;
        alpha = norm_x;
      } else {
        v(0) += norm_x;
        alpha = -norm_x;
      }
      v.normalize();
      // A <- H A H on the trailing block with H = I - 2 v v^T
      auto block = a.bottomRightCorner(len, len);
      const Vec w = 2.0 * (block * v);
      block += v * w.transpose() - w * v.transpose();
      pf = -pf;
    }
    a(i + 1, i) = alpha;
    a(i, i + 1) = -alpha;
    a.col(i).tail(len - 1).setZero();
    a.row(i).tail(len - 1).setZero();
    if (i % 2 == 0) pf *= -alpha;
  }
  return pf * a(n - 2, n - 1);
}

double top_form_value(const Vec& alpha, const Mat& omega) {
  const Eigen::Index d = alpha.size();
  if (omega.rows() != d || omega.cols() != d)
    throw StructuralError("covector and 2-form sizes differ");
  if (d % 2 == 0) throw StructuralError("top form needs an odd-dimensional frame");
  const Eigen::Index k = (d - 1) / 2;
  double fact = 1.0;
  for (Eigen::Index i = 2; i <= k; ++i) fact *= static_cast<double>(i);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (alpha(i) == 0.0) continue;
    Mat minor(d - 1, d - 1);
    for (Eigen::Index r = 0, rr = 0; r < d; ++r) {
      if (r == i) continue;
      for (Eigen::Index c = 0, cc = 0; c < d; ++c) {
        if (c == i) continue;
        minor(rr, cc++) = omega(r, c);
      }
      ++rr;
    }
    sum += (i % 2 == 0 ? 1.0 : -1.0) * alpha(i) * pfaffian(minor);
  }
  return fact * sum;
}

}  // namespace mam

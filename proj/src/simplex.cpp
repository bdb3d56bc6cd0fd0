#include "mam/simplex.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mam {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr int kMaxPivots = 100000;

struct Tableau {
  Mat t;                   // constraint rows, then the objective row; last column is rhs
  std::vector<int> basis;  // basic column per constraint row
  int rows = 0;
  int cols = 0;            // number of variable columns (excluding rhs)

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i <= rows; ++i) {
      if (i == r) continue;
      const double f = t(i, c);
      if (f != 0.0) t.row(i) -= f * t.row(r);
    }
    basis[static_cast<std::size_t>(r)] = c;
  }

  // Runs Bland's-rule simplex on the objective row; columns >= allowed_cols never enter.
  LpStatus run(int allowed_cols) {
    for (int iter = 0; iter < kMaxPivots; ++iter) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (t(rows, j) < -kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::optimal;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows; ++i) {
        const double a = t(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = t(i, cols) / a;
        if (ratio < best - 1e-14 ||
            (ratio <= best + 1e-14 && leave >= 0 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex: pivot limit exceeded");
  }
};

// Builds the phase-1 tableau and runs it. Returns the tableau positioned at the
// phase-1 optimum.
Tableau phase_one(const Mat& a, const Vec& b) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  Tableau tab;
  tab.rows = m;
  tab.cols = n + m;
  tab.t = Mat::Zero(m + 1, n + m + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    tab.t.row(i).head(n) = sign * a.row(i);
    tab.t(i, n + i) = 1.0;
    tab.t(i, n + m) = sign * b(i);
    tab.basis[static_cast<std::size_t>(i)] = n + i;
  }
  // objective: sum of artificials, expressed in the non-basic columns
  for (int i = 0; i < m; ++i) {
    tab.t.row(m).head(n) -= tab.t.row(i).head(n);
    tab.t(m, n + m) -= tab.t(i, n + m);
  }
  tab.run(n + m);
  return tab;
}

}  // namespace

double lp_infeasibility(const Mat& a, const Vec& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("lp: row count mismatch");
  if (a.rows() == 0) return 0.0;
  Tableau tab = phase_one(a, b);
  return std::max(0.0, -tab.t(tab.rows, tab.cols));
}

LpResult solve_lp(const Mat& a, const Vec& b, const Vec& c, double feas_tol) {
  if (a.rows() != b.size() || a.cols() != c.size())
    throw std::invalid_argument("lp: dimension mismatch");
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  LpResult res;
  res.x = Vec::Zero(n);
  if (m == 0) {
    // only x >= 0: optimum at 0 unless some cost is negative
    for (int j = 0; j < n; ++j)
      if (c(j) < 0.0) {
        res.status = LpStatus::unbounded;
        return res;
      }
    res.status = LpStatus::optimal;
    return res;
  }

  Tableau tab = phase_one(a, b);
  res.infeasibility = std::max(0.0, -tab.t(m, tab.cols));
  if (res.infeasibility > feas_tol) {
    res.status = LpStatus::infeasible;
    return res;
  }

  // move remaining artificials out of the basis where possible
  for (int i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.t(i, j)) > kPivotEps) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  // phase 2 objective row
  tab.t.row(m).setZero();
  tab.t.row(m).head(n) = c.transpose();
  for (int i = 0; i < m; ++i) {
    const int bj = tab.basis[static_cast<std::size_t>(i)];
    if (bj < n && c(bj) != 0.0) tab.t.row(m) -= c(bj) * tab.t.row(i);
  }
  res.status = tab.run(n);
  if (res.status != LpStatus::optimal) return res;

  for (int i = 0; i < m; ++i) {
    const int bj = tab.basis[static_cast<std::size_t>(i)];
    if (bj < n) res.x(bj) = std::max(0.0, tab.t(i, tab.cols));
  }
  res.objective = c.dot(res.x);
  return res;
}

double hull_l1_distance(const Mat& points) {
  const int d = static_cast<int>(points.rows());
  const int k = static_cast<int>(points.cols());
  if (k == 0) throw std::invalid_argument("hull distance of an empty point set");
  // variables: t (k), p (d), q (d)
  Mat a = Mat::Zero(d + 1, k + 2 * d);
  a.topLeftCorner(d, k) = points;
  a.block(0, k, d, d) = Mat::Identity(d, d);
  a.block(0, k + d, d, d) = -Mat::Identity(d, d);
  a.block(d, 0, 1, k).setOnes();
  Vec b = Vec::Zero(d + 1);
  b(d) = 1.0;
  Vec c = Vec::Zero(k + 2 * d);
  c.tail(2 * d).setOnes();
  // Always feasible (p, q absorb any t); the cutoff only has to exceed phase-1 rounding.
  const double scale = std::max(1.0, points.cwiseAbs().maxCoeff());
  const LpResult r = solve_lp(a, b, c, 1e-9 * scale);
  if (r.status != LpStatus::optimal)
    throw std::logic_error("hull distance LP did not reach an optimum");
  return r.objective;
}

}  // namespace mam

#include "mam/variety.hpp"

#include "mam/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <optional>

namespace mam {
namespace {

// Extra residual rows contributed by a stratum (pinned coordinates are removed
// from the unknowns instead of adding rows).
int stratum_rows(const Stratum& st) { return st.null_square_sum ? 2 : 0; }

Vec full_residual(const Configuration& cfg, const Vec& x, const Stratum& st) {
  const Vec base = evaluate_system(cfg, x);
  if (!st.null_square_sum) return base;
  Vec r(base.size() + 2);
  r.head(base.size()) = base;
  cplx sum = 0.0;
  for (int q = 0; q < cfg.w_count(); ++q) sum += get_c(x, q) * get_c(x, q);
  r(base.size()) = sum.real();
  r(base.size() + 1) = sum.imag();
  return r;
}

Mat full_jacobian(const Configuration& cfg, const Vec& x, const Stratum& st) {
  const Mat base = system_jacobian(cfg, x);
  if (!st.null_square_sum) return base;
  Mat j = Mat::Zero(base.rows() + 2, base.cols());
  j.topRows(base.rows()) = base;
  const Eigen::Index r0 = base.rows();
  for (int q = 0; q < cfg.w_count(); ++q) {
    const double u = x(2 * q), v = x(2 * q + 1);
    j(r0, 2 * q) = 2 * u;
    j(r0, 2 * q + 1) = -2 * v;
    j(r0 + 1, 2 * q) = 2 * v;
    j(r0 + 1, 2 * q + 1) = 2 * u;
  }
  return j;
}

std::vector<int> free_columns(const Configuration& cfg, const Stratum& st) {
  std::vector<char> pinned(static_cast<std::size_t>(cfg.ambient_dim()), 0);
  for (int k : st.pinned_w) {
    if (k < 0 || k >= cfg.w_count()) throw StructuralError("pinned w index out of range");
    pinned[static_cast<std::size_t>(2 * k)] = 1;
    pinned[static_cast<std::size_t>(2 * k + 1)] = 1;
  }
  std::vector<int> cols;
  for (int i = 0; i < cfg.ambient_dim(); ++i)
    if (!pinned[static_cast<std::size_t>(i)]) cols.push_back(i);
  return cols;
}

Mat select_columns(const Mat& a, const std::vector<int>& cols) {
  Mat out(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    out.col(static_cast<Eigen::Index>(c)) = a.col(cols[c]);
  return out;
}

// Lipschitz bound for the Jacobian: every residual row is a quadratic form
// x^T Q x with |Q|_2 <= max(1, max |lambda|).
double jacobian_lipschitz(const Configuration& cfg, int rows) {
  double lam = 1.0;
  for (int j = 0; j < cfg.n; ++j)
    for (int k = 0; k < cfg.m; ++k) lam = std::max(lam, std::abs(cfg.lambda(k, j)));
  return 2.0 * std::sqrt(static_cast<double>(rows)) * lam;
}

double kantorovich(const Mat& jfree, double res_norm, double lip) {
  if (jfree.rows() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(jfree);
  const Vec& s = svd.singularValues();
  const double smin = s(std::min<Eigen::Index>(s.size(), jfree.rows()) - 1);
  if (s.size() < jfree.rows() || smin <= 0.0) return std::numeric_limits<double>::infinity();
  return lip * res_norm / (smin * smin);
}

std::uint64_t hash_vector(const Vec& x) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    std::uint64_t bits;
    const double d = x(i);
    std::memcpy(&bits, &d, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

Stratum stratum_for_pattern(const Configuration& cfg, const std::vector<int>& pattern) {
  Stratum st;
  switch (cfg.kind) {
    case Kind::classical:
      throw StructuralError("zero patterns apply to mixed-type configurations only");
    case Kind::mixed_m1:
      if (!pattern.empty()) {
        std::vector<int> sorted = pattern;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        if (static_cast<int>(sorted.size()) != cfg.s || sorted.front() != 0 || sorted.back() != cfg.s - 1)
          throw StructuralError("mixed-m1 zero patterns are empty or the full w index set");
        st.pinned_w = sorted;
      } else if (cfg.s == 1) {
        st.pinned_w = {0};
      } else {
        st.null_square_sum = true;
      }
      break;
    case Kind::mixed_general:
      for (int k : pattern)
        if (k < 0 || k >= cfg.m) throw StructuralError("zero pattern index out of range");
      st.pinned_w = pattern;
      std::sort(st.pinned_w.begin(), st.pinned_w.end());
      st.pinned_w.erase(std::unique(st.pinned_w.begin(), st.pinned_w.end()), st.pinned_w.end());
      break;
  }
  return st;
}

std::vector<int> pattern_of(const Configuration&, const Stratum& st) {
  if (st.null_square_sum) return {0};
  return st.pinned_w;
}

std::optional<VarietyPoint> attempt_sample(const Configuration& cfg, const Stratum& st,
                                           std::uint64_t seed, int index, int attempt,
                                           const SolverOptions& opts) {
  Philox rng(seed, static_cast<std::uint64_t>(index), static_cast<std::uint32_t>(attempt));
  Vec x(cfg.ambient_dim());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.gaussian();
  for (int k : st.pinned_w) x.segment(2 * k, 2).setZero();
  const double nx = x.norm();
  if (nx == 0.0) return std::nullopt;
  x /= nx;
  ProjectionResult pr = project_to_variety(cfg, x, opts, st);
  if (!pr.ok()) return std::nullopt;
  pr.point.zero_pattern = pattern_of(cfg, st);
  return pr.point;
}

bool is_duplicate(const VarietyPoint& p, const std::vector<VarietyPoint>& accepted,
                  double tol) {
  for (const auto& q : accepted)
    if ((p.coordinates - q.coordinates).lpNorm<Eigen::Infinity>() < tol) return true;
  return false;
}

// Serial reference: sample i takes the first attempt that certifies and does
// not duplicate an earlier sample.
std::vector<VarietyPoint> sample_serial_impl(const Configuration& cfg, const Stratum& st,
                                             int count, std::uint64_t seed,
                                             const SolverOptions& opts) {
  std::vector<VarietyPoint> out;
  for (int i = 0; i < count; ++i) {
    bool done = false;
    for (int a = 0; a < opts.max_attempts && !done; ++a) {
      auto p = attempt_sample(cfg, st, seed, i, a, opts);
      if (p && !is_duplicate(*p, out, opts.duplicate_tol)) {
        out.push_back(std::move(*p));
        done = true;
      }
    }
    if (!done) throw PartialSampleError(count, static_cast<int>(out.size()));
  }
  return out;
}

// Same selection rule as the serial version: the first certified attempt of
// every index is computed in parallel, duplicates are then resolved in index
// order by continuing that index's attempt sequence.
std::vector<VarietyPoint> sample_parallel_impl(const Configuration& cfg, const Stratum& st,
                                               int count, std::uint64_t seed,
                                               const SolverOptions& opts) {
  std::vector<std::optional<VarietyPoint>> first(static_cast<std::size_t>(count));
  std::vector<int> first_attempt(static_cast<std::size_t>(count), opts.max_attempts);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      for (int a = 0; a < opts.max_attempts; ++a) {
        auto p = attempt_sample(cfg, st, seed, i, a, opts);
        if (p) {
          first[static_cast<std::size_t>(i)] = std::move(p);
          first_attempt[static_cast<std::size_t>(i)] = a;
          break;
        }
      }
    } catch (...) {
#pragma omp critical(mam_sample_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<VarietyPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    auto& cand = first[static_cast<std::size_t>(i)];
    if (!cand) throw PartialSampleError(count, static_cast<int>(out.size()));
    if (!is_duplicate(*cand, out, opts.duplicate_tol)) {
      out.push_back(std::move(*cand));
      continue;
    }
    bool done = false;
    for (int a = first_attempt[static_cast<std::size_t>(i)] + 1; a < opts.max_attempts && !done;
         ++a) {
      auto p = attempt_sample(cfg, st, seed, i, a, opts);
      if (p && !is_duplicate(*p, out, opts.duplicate_tol)) {
        out.push_back(std::move(*p));
        done = true;
      }
    }
    if (!done) throw PartialSampleError(count, static_cast<int>(out.size()));
  }
  return out;
}

}  // namespace

std::vector<cplx> w_block(const Configuration& cfg, const Vec& x) {
  std::vector<cplx> w;
  for (int q = 0; q < cfg.w_count(); ++q) w.push_back(get_c(x, q));
  return w;
}

std::vector<cplx> z_block(const Configuration& cfg, const Vec& x) {
  std::vector<cplx> z;
  const int p = cfg.w_count();
  for (int j = 0; j < cfg.n; ++j) z.push_back(get_c(x, p + j));
  return z;
}

Vec quadric_residuals(const Configuration& cfg, const Vec& x) {
  const Vec r = evaluate_system(cfg, x);
  return r.head(r.size() - 1);
}

Vec evaluate_system(const Configuration& cfg, const Vec& x) {
  if (x.size() != cfg.ambient_dim())
    throw StructuralError("point has the wrong ambient dimension");
  const int p = cfg.w_count();
  const int nq = cfg.kind == Kind::mixed_m1 ? 1 : cfg.m;
  Vec r(2 * nq + 1);
  double rho = 0.0;
  for (int q = 0; q < p; ++q) rho += std::norm(get_c(x, q));
  for (int j = 0; j < cfg.n; ++j) rho += std::norm(get_c(x, p + j));
  for (int k = 0; k < nq; ++k) {
    cplx g = 0.0;
    if (cfg.kind == Kind::mixed_general) {
      g += get_c(x, k) * get_c(x, k);
    } else if (cfg.kind == Kind::mixed_m1) {
      for (int q = 0; q < p; ++q) g += get_c(x, q) * get_c(x, q);
    }
    for (int j = 0; j < cfg.n; ++j) g += cfg.lambda(k, j) * std::norm(get_c(x, p + j));
    r(2 * k) = g.real();
    r(2 * k + 1) = g.imag();
  }
  r(2 * nq) = rho - 1.0;
  return r;
}

Mat system_jacobian(const Configuration& cfg, const Vec& x) {
  if (x.size() != cfg.ambient_dim())
    throw StructuralError("point has the wrong ambient dimension");
  const int p = cfg.w_count();
  const int nq = cfg.kind == Kind::mixed_m1 ? 1 : cfg.m;
  Mat jac = Mat::Zero(2 * nq + 1, cfg.ambient_dim());
  auto add_square = [&](int row, int q) {
    const double u = x(2 * q), v = x(2 * q + 1);
    jac(row, 2 * q) += 2 * u;
    jac(row, 2 * q + 1) += -2 * v;
    jac(row + 1, 2 * q) += 2 * v;
    jac(row + 1, 2 * q + 1) += 2 * u;
  };
  for (int k = 0; k < nq; ++k) {
    if (cfg.kind == Kind::mixed_general) add_square(2 * k, k);
    if (cfg.kind == Kind::mixed_m1)
      for (int q = 0; q < p; ++q) add_square(2 * k, q);
    for (int j = 0; j < cfg.n; ++j) {
      const cplx lam = cfg.lambda(k, j);
      const int c = 2 * (p + j);
      jac(2 * k, c) = 2 * lam.real() * x(c);
      jac(2 * k, c + 1) = 2 * lam.real() * x(c + 1);
      jac(2 * k + 1, c) = 2 * lam.imag() * x(c);
      jac(2 * k + 1, c + 1) = 2 * lam.imag() * x(c + 1);
    }
  }
  jac.row(2 * nq) = 2.0 * x.transpose();
  return jac;
}

std::string to_string(ProjectionStatus s) {
  switch (s) {
    case ProjectionStatus::converged:
      return "converged";
    case ProjectionStatus::not_converged:
      return "not-converged";
    case ProjectionStatus::singular_point:
      return "singular-point";
  }
  return "not-converged";
}

double frame_orientation(const Mat& jacobian, const Mat& frame) {
  Mat full(jacobian.cols(), jacobian.rows() + frame.cols());
  full << jacobian.transpose(), frame;
  return full.partialPivLu().determinant();
}

VarietyPoint certify_point(const Configuration& cfg, const Vec& x, const SolverOptions& opts) {
  VarietyPoint pt;
  pt.coordinates = x;
  pt.residual_inf_norm = evaluate_system(cfg, x).lpNorm<Eigen::Infinity>();
  const Mat jac = system_jacobian(cfg, x);
  const RankInfo ri = numerical_rank(jac, opts.rank_tol);
  pt.jacobian_real_rank = ri.rank;
  if (ri.rank < jac.rows()) throw std::runtime_error("singular point: Jacobian rank deficient");
  Mat frame = null_space(jac, opts.rank_tol);
  if (frame_orientation(jac, frame) < 0.0) frame.col(frame.cols() - 1) *= -1.0;
  pt.tangent_frame = std::move(frame);
  return pt;
}

ProjectionResult project_to_variety(const Configuration& cfg, const Vec& start,
                                    const SolverOptions& opts, const Stratum& stratum) {
  cfg.validate();
  if (start.size() != cfg.ambient_dim())
    throw StructuralError("start point has the wrong ambient dimension");
  if (stratum.null_square_sum && cfg.kind != Kind::mixed_m1)
    throw StructuralError("the null-square-sum stratum exists for mixed-m1 only");
  const std::vector<int> cols = free_columns(cfg, stratum);

  Vec x = start;
  for (int k : stratum.pinned_w) x.segment(2 * k, 2).setZero();
  if (x.norm() == 0.0) throw StructuralError("projection start must not be the origin");

  const int rows = cfg.equation_count() + stratum_rows(stratum);
  const double lip = jacobian_lipschitz(cfg, rows);

  // Degenerate starts: a vanishing Jacobian row gives Gauss-Newton no
  // direction for that equation.
  {
    Philox rng(hash_vector(x), 0x5eedull);
    for (int tries = 0; tries < 5; ++tries) {
      const Mat jf = select_columns(full_jacobian(cfg, x, stratum), cols);
      bool degenerate = false;
      for (Eigen::Index i = 0; i < jf.rows(); ++i)
        if (jf.row(i).norm() < 1e-12) degenerate = true;
      if (!degenerate) break;
      for (int c : cols) x(c) += 1e-6 * rng.gaussian();
    }
  }

  ProjectionResult res;
  Vec r = full_residual(cfg, x, stratum);
  double rn = r.norm();
  int iters = 0;
  int polish = 0;
  constexpr int kPolishSteps = 3;
  bool converged = false;
  bool singular = false;

  while (true) {
    const double rinf = r.lpNorm<Eigen::Infinity>();
    const Mat jf = select_columns(full_jacobian(cfg, x, stratum), cols);
    if (rinf <= opts.tol) {
      const double h = kantorovich(jf, rn, lip);
      if (h <= 0.5 && (iters == 0 || polish >= kPolishSteps || rinf < 1e-15)) {
        converged = true;
        break;
      }
      if (iters >= opts.max_iter) {
        converged = h <= 0.5;
        singular = !converged;
        break;
      }
      ++polish;
    } else if (iters >= opts.max_iter) {
      break;
    }

    const Vec step = -jf.completeOrthogonalDecomposition().solve(r);
    Vec full_step = Vec::Zero(x.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      full_step(cols[c]) = step(static_cast<Eigen::Index>(c));

    bool accepted = false;
    double t = 1.0;
    Vec xn, rnew;
    for (int k = 0; k <= opts.max_halvings; ++k, t *= 0.5) {
      xn = x + t * full_step;
      rnew = full_residual(cfg, xn, stratum);
      if (rnew.norm() < rn) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // stagnation: the iterate cannot be improved further
      if (rinf <= opts.tol) {
        converged = kantorovich(jf, rn, lip) <= 0.5;
        singular = !converged;
      }
      break;
    }
    x = xn;
    r = rnew;
    rn = r.norm();
    ++iters;
  }

  res.iterations = iters;
  res.last_iterate = x;
  res.last_residual = r.lpNorm<Eigen::Infinity>();
  if (converged) {
    const Mat jac = system_jacobian(cfg, x);
    const RankInfo ri = numerical_rank(jac, opts.rank_tol);
    if (ri.rank < jac.rows()) {
      singular = true;
      converged = false;
    }
  }
  if (converged) {
    res.status = ProjectionStatus::converged;
    res.point = certify_point(cfg, x, opts);
    res.point.residual_inf_norm = res.last_residual;
    res.point.iterations = iters;
    res.point.zero_pattern = pattern_of(cfg, stratum);
  } else {
    res.status = singular ? ProjectionStatus::singular_point : ProjectionStatus::not_converged;
  }
  return res;
}

PartialSampleError::PartialSampleError(int req, int ok)
    : std::runtime_error("certified only " + std::to_string(ok) + " of " +
                         std::to_string(req) + " requested samples"),
      requested(req),
      succeeded(ok) {}

std::vector<VarietyPoint> sample_points(const Configuration& cfg, int count,
                                        std::uint64_t seed, const SolverOptions& opts) {
  cfg.validate();
  if (count <= 0) return {};
  return sample_parallel_impl(cfg, Stratum{}, count, seed, opts);
}

std::vector<VarietyPoint> sample_points_serial(const Configuration& cfg, int count,
                                               std::uint64_t seed, const SolverOptions& opts) {
  cfg.validate();
  if (count <= 0) return {};
  return sample_serial_impl(cfg, Stratum{}, count, seed, opts);
}

std::vector<VarietyPoint> sample_with_zero_pattern(const Configuration& cfg,
                                                   const std::vector<int>& pattern, int count,
                                                   std::uint64_t seed,
                                                   const SolverOptions& opts) {
  cfg.validate();
  const Stratum st = stratum_for_pattern(cfg, pattern);
  if (count <= 0) return {};
  return sample_parallel_impl(cfg, st, count, seed, opts);
}

std::vector<VarietyPoint> sample_with_zero_pattern_serial(const Configuration& cfg,
                                                          const std::vector<int>& pattern,
                                                          int count, std::uint64_t seed,
                                                          const SolverOptions& opts) {
  cfg.validate();
  const Stratum st = stratum_for_pattern(cfg, pattern);
  if (count <= 0) return {};
  return sample_serial_impl(cfg, st, count, seed, opts);
}

int nonzero_coordinate_count(const Configuration& cfg, const Vec& x, double tol) {
  int count = 0;
  for (cplx z : z_block(cfg, x))
    if (std::abs(z) > tol) ++count;
  return count;
}

}  // namespace mam

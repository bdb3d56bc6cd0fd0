#include "mam/config.hpp"

#include "mam/simplex.hpp"

#include <algorithm>
#include <exception>
#include <limits>

namespace mam {

std::string to_string(Kind k) {
  switch (k) {
    case Kind::classical:
      return "classical";
    case Kind::mixed_m1:
      return "mixed-m1";
    case Kind::mixed_general:
      return "mixed-general";
  }
  return "classical";
}

Kind kind_from_string(const std::string& s) {
  if (s == "classical") return Kind::classical;
  if (s == "mixed-m1") return Kind::mixed_m1;
  if (s == "mixed-general") return Kind::mixed_general;
  throw StructuralError("unknown configuration kind '" + s + "'");
}

int Configuration::w_count() const {
  switch (kind) {
    case Kind::classical:
      return 0;
    case Kind::mixed_m1:
      return s;
    case Kind::mixed_general:
      return m;
  }
  return 0;
}

double Configuration::max_weight() const {
  double w = 0.0;
  for (double a : weights_a) w = std::max(w, a);
  for (double b : weights_b) w = std::max(w, b);
  return w;
}

void Configuration::validate() const {
  if (m < 1) throw StructuralError("m must be a positive integer");
  if (n < 1) throw StructuralError("n must be a positive integer");
  if (lambdas.rows() != 2 * m || lambdas.cols() != n)
    throw StructuralError("lambdas must hold n vectors of real dimension 2m");
  if (!lambdas.allFinite()) throw StructuralError("lambdas must be finite");
  if (kind == Kind::mixed_m1) {
    if (m != 1) throw StructuralError("mixed-m1 configurations require m = 1");
    if (s < 1) throw StructuralError("mixed-m1 configurations require s >= 1");
  }
  if (static_cast<int>(weights_b.size()) != n)
    throw StructuralError("weights_b must have n entries");
  const std::size_t expected_a = static_cast<std::size_t>(w_count());
  if (kind != Kind::classical && weights_a.size() != expected_a)
    throw StructuralError("weights_a must have one entry per w-coordinate");
  for (double a : weights_a)
    if (!(a > 0.0)) throw StructuralError("weights must be strictly positive");
  for (double b : weights_b)
    if (!(b > 0.0)) throw StructuralError("weights must be strictly positive");
}

std::vector<std::string> Configuration::hypothesis_warnings() const {
  std::vector<std::string> out;
  if (n <= 3) out.push_back("hypothesis violation: n > 3 fails (n = " + std::to_string(n) + ")");
  if (kind != Kind::mixed_m1 && n <= 2 * m)
    out.push_back("hypothesis violation: n > 2m fails (n = " + std::to_string(n) +
                  ", m = " + std::to_string(m) + ")");
  return out;
}

Configuration Configuration::restrict_rows(const std::vector<int>& rows) const {
  if (rows.empty()) throw StructuralError("row restriction must be nonempty");
  Configuration sub;
  sub.m = static_cast<int>(rows.size());
  sub.n = n;
  sub.kind = Kind::classical;
  sub.lambdas = Mat(2 * sub.m, n);
  for (int r = 0; r < sub.m; ++r) {
    const int k = rows[static_cast<std::size_t>(r)];
    if (k < 0 || k >= m) throw StructuralError("row index out of range");
    sub.lambdas.row(2 * r) = lambdas.row(2 * k);
    sub.lambdas.row(2 * r + 1) = lambdas.row(2 * k + 1);
  }
  sub.weights_b = weights_b;
  return sub;
}

Configuration Configuration::restrict_vectors(const std::vector<int>& cols) const {
  Configuration sub;
  sub.m = m;
  sub.n = static_cast<int>(cols.size());
  sub.kind = Kind::classical;
  sub.lambdas = Mat(2 * m, sub.n);
  sub.weights_b.reserve(cols.size());
  for (int c = 0; c < sub.n; ++c) {
    const int j = cols[static_cast<std::size_t>(c)];
    if (j < 0 || j >= n) throw StructuralError("vector index out of range");
    sub.lambdas.col(c) = lambdas.col(j);
    sub.weights_b.push_back(weights_b[static_cast<std::size_t>(j)]);
  }
  return sub;
}

Configuration make_classical(const std::vector<std::vector<cplx>>& lambdas) {
  if (lambdas.empty()) throw StructuralError("configuration needs at least one vector");
  Configuration cfg;
  cfg.n = static_cast<int>(lambdas.size());
  cfg.m = static_cast<int>(lambdas.front().size());
  cfg.lambdas = Mat(2 * cfg.m, cfg.n);
  for (int j = 0; j < cfg.n; ++j) {
    const auto& v = lambdas[static_cast<std::size_t>(j)];
    if (static_cast<int>(v.size()) != cfg.m)
      throw StructuralError("all lambda vectors must have the same length");
    for (int k = 0; k < cfg.m; ++k) {
      cfg.lambdas(2 * k, j) = v[static_cast<std::size_t>(k)].real();
      cfg.lambdas(2 * k + 1, j) = v[static_cast<std::size_t>(k)].imag();
    }
  }
  cfg.weights_b.assign(static_cast<std::size_t>(cfg.n), 1.0);
  cfg.validate();
  return cfg;
}

Configuration make_classical(const std::vector<cplx>& lambdas) {
  std::vector<std::vector<cplx>> v;
  v.reserve(lambdas.size());
  for (cplx c : lambdas) v.push_back({c});
  return make_classical(v);
}

Configuration make_mixed_m1(const std::vector<cplx>& lambdas, int s) {
  Configuration cfg = make_classical(lambdas);
  cfg.kind = Kind::mixed_m1;
  cfg.s = s;
  cfg.weights_a.assign(static_cast<std::size_t>(std::max(s, 0)), 1.0);
  cfg.validate();
  return cfg;
}

Configuration make_mixed_general(const std::vector<std::vector<cplx>>& lambdas) {
  Configuration cfg = make_classical(lambdas);
  cfg.kind = Kind::mixed_general;
  cfg.weights_a.assign(static_cast<std::size_t>(cfg.m), 1.0);
  cfg.validate();
  return cfg;
}

double subset_hull_distance(const Configuration& cfg, const std::vector<int>& subset) {
  Mat pts(cfg.lambdas.rows(), static_cast<Eigen::Index>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i)
    pts.col(static_cast<Eigen::Index>(i)) = cfg.lambdas.col(subset[i]);
  return hull_l1_distance(pts);
}

bool check_siegel(const Configuration& cfg, double tol) {
  cfg.validate();
  return hull_l1_distance(cfg.lambdas) <= tol;
}

namespace {

int affine_hull_dimension(const Mat& pts) {
  if (pts.cols() <= 1) return 0;
  const Mat diffs = pts.rightCols(pts.cols() - 1).colwise() - pts.col(0);
  return numerical_rank(diffs).rank;
}

AdmissibilityReport summarize(const Configuration& cfg,
                              const std::vector<std::vector<int>>& subsets,
                              const std::vector<double>& dist, double tol) {
  AdmissibilityReport rep;
  rep.hull_dimension = affine_hull_dimension(cfg.lambdas);
  rep.weak_hyperbolicity = true;
  rep.min_subset_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    rep.min_subset_distance = std::min(rep.min_subset_distance, dist[i]);
    if (dist[i] <= tol) {
      if (!rep.violating_subset) rep.violating_subset = subsets[i];
      rep.weak_hyperbolicity = false;
    } else if (dist[i] <= 10.0 * tol) {
      rep.degenerate = true;
    }
  }
  return rep;
}

}  // namespace

AdmissibilityReport check_weak_hyperbolicity(const Configuration& cfg, double tol) {
  cfg.validate();
  const auto subsets = combinations(cfg.n, std::min(2 * cfg.m, cfg.n));
  std::vector<double> dist(subsets.size());
  const long count = static_cast<long>(subsets.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      dist[static_cast<std::size_t>(i)] = subset_hull_distance(cfg, subsets[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(mam_wh_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(cfg, subsets, dist, tol);
}

AdmissibilityReport check_weak_hyperbolicity_serial(const Configuration& cfg, double tol) {
  cfg.validate();
  const auto subsets = combinations(cfg.n, std::min(2 * cfg.m, cfg.n));
  std::vector<double> dist;
  dist.reserve(subsets.size());
  for (const auto& sub : subsets) dist.push_back(subset_hull_distance(cfg, sub));
  return summarize(cfg, subsets, dist, tol);
}

AdmissibilityReport check_admissible(const Configuration& cfg, double tol) {
  AdmissibilityReport rep = check_weak_hyperbolicity(cfg, tol);
  rep.siegel = check_siegel(cfg, tol);
  return rep;
}

int check_regularity_rank(const Configuration& cfg, const std::vector<int>& subset,
                          double rank_tol) {
  cfg.validate();
  if (subset.empty()) throw StructuralError("regularity rank needs a nonempty index set");
  const int rows = cfg.m + 1;
  const int cols = static_cast<int>(subset.size());
  // complex A = B + iC realifies to [[B, -C], [C, B]]
  Mat b = Mat::Zero(rows, cols);
  Mat c = Mat::Zero(rows, cols);
  for (int q = 0; q < cols; ++q) {
    const int j = subset[static_cast<std::size_t>(q)];
    if (j < 0 || j >= cfg.n) throw StructuralError("index out of range");
    for (int k = 0; k < cfg.m; ++k) {
      b(k, q) = cfg.lambda(k, j).real();
      c(k, q) = cfg.lambda(k, j).imag();
    }
    b(cfg.m, q) = 1.0;
  }
  Mat real(2 * rows, 2 * cols);
  real << b, -c, c, b;
  return numerical_rank(real, rank_tol).rank / 2;
}

MixedAdmissibility check_mixed_admissible(const Configuration& cfg, double tol) {
  cfg.validate();
  MixedAdmissibility out;
  out.admissible = true;
  for (int mask = 1; mask < (1 << cfg.m); ++mask) {
    std::vector<int> rows;
    for (int k = 0; k < cfg.m; ++k)
      if (mask & (1 << k)) rows.push_back(k);
    const Configuration sub = cfg.restrict_rows(rows);
    if (!check_admissible(sub, tol).admissible()) {
      out.admissible = false;
      out.failing.push_back(rows);
    }
  }
  // report in a stable order: by size, then lexicographic
  std::sort(out.failing.begin(), out.failing.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

bool is_admissible_for_kind(const Configuration& cfg, double tol) {
  if (cfg.kind == Kind::mixed_general) return check_mixed_admissible(cfg, tol).admissible;
  return check_admissible(cfg, tol).admissible();
}

}  // namespace mam

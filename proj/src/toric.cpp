#include "mam/toric.hpp"

#include "mam/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mam {
namespace {

constexpr double kFeas = kDefaultFeasTol;

void require_mixed_general(const Configuration& cfg) {
  if (cfg.kind != Kind::mixed_general)
    throw StructuralError("mixed-general configuration expected");
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// {t >= 0, A t = b}
PolytopeDescription standard_polytope(const Mat& a, const Vec& b) {
  const int n = static_cast<int>(a.cols());
  PolytopeDescription p;
  p.ambient_dim = n;
  for (Eigen::Index r = 0; r < a.rows(); ++r) p.equalities.push_back({a.row(r).transpose(), b(r)});
  for (int j = 0; j < n; ++j) {
    Vec e = Vec::Zero(n);
    e(j) = -1.0;
    p.inequalities.push_back({e, 0.0});
  }
  p.infeasibility = lp_infeasibility(a, b);
  if (p.infeasibility > kFeas) {
    p.empty = true;
    p.dim = -1;
    return p;
  }
  // implicit equalities t_j = 0
  std::vector<int> free_cols;
  for (int j = 0; j < n; ++j) {
    Vec c = Vec::Zero(n);
    c(j) = -1.0;
    const LpResult r = solve_lp(a, b, c);
    if (r.status == LpStatus::optimal && -r.objective > kFeas) free_cols.push_back(j);
  }
  Mat af(a.rows(), static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t i = 0; i < free_cols.size(); ++i)
    af.col(static_cast<Eigen::Index>(i)) = a.col(free_cols[i]);
  p.dim = static_cast<int>(free_cols.size()) - (af.cols() > 0 ? numerical_rank(af).rank : 0);

  if (p.dim > kMaxVertexDim) return p;
  const int r = numerical_rank(a).rank;
  if (binom(n, r) > 2e5) return p;
  std::vector<Vec> verts;
  for (const auto& basis : combinations(n, r)) {
    Mat ab(a.rows(), r);
    for (int i = 0; i < r; ++i) ab.col(i) = a.col(basis[static_cast<std::size_t>(i)]);
    if (numerical_rank(ab).rank < r) continue;
    const Vec xb = ab.colPivHouseholderQr().solve(b);
    if ((ab * xb - b).lpNorm<Eigen::Infinity>() > 1e-9 || xb.minCoeff() < -kFeas) continue;
    Vec x = Vec::Zero(n);
    for (int i = 0; i < r; ++i) x(basis[static_cast<std::size_t>(i)]) = std::max(0.0, xb(i));
    const bool dup = std::any_of(verts.begin(), verts.end(), [&](const Vec& v) {
      return (v - x).lpNorm<Eigen::Infinity>() < 1e-9;
    });
    if (!dup) verts.push_back(x);
  }
  std::sort(verts.begin(), verts.end(), [](const Vec& x, const Vec& y) {
    return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(), y.data() + y.size());
  });
  p.vertices = std::move(verts);
  return p;
}

Mat lambda_rows(const Configuration& cfg, double scale) {
  Mat a(2 * cfg.m + 1, cfg.n);
  a.topRows(2 * cfg.m) = scale * cfg.lambdas;
  a.row(2 * cfg.m).setOnes();
  return a;
}

double z_mass(const Configuration& cfg, const Vec& x) {
  double s = 0.0;
  for (cplx z : z_block(cfg, x)) s += std::norm(z);
  return s;
}

}  // namespace

std::vector<cplx> moment_map(const Configuration& cfg, const VarietyPoint& pt) {
  require_mixed_general(cfg);
  return w_block(cfg, pt.coordinates);
}

BigMoment big_moment_map(const Configuration& cfg, const VarietyPoint& pt) {
  require_mixed_general(cfg);
  BigMoment bm;
  bm.w = w_block(cfg, pt.coordinates);
  bm.t = Vec(cfg.n);
  const auto z = z_block(cfg, pt.coordinates);
  for (int j = 0; j < cfg.n; ++j) bm.t(j) = std::norm(z[static_cast<std::size_t>(j)]);
  return bm;
}

double big_moment_violation(const Configuration& cfg, const BigMoment& bm) {
  double v = std::max(0.0, -bm.t.minCoeff());
  double mass = bm.t.sum();
  for (int k = 0; k < cfg.m; ++k) {
    cplx s = bm.w[static_cast<std::size_t>(k)] * bm.w[static_cast<std::size_t>(k)];
    for (int j = 0; j < cfg.n; ++j) s += bm.t(j) * cfg.lambda(k, j);
    v = std::max(v, std::abs(s));
    mass += std::norm(bm.w[static_cast<std::size_t>(k)]);
  }
  return std::max(v, std::abs(mass - 1.0));
}

PolytopeDescription gale_transform(const Configuration& cfg, double c) {
  cfg.validate();
  if (!(c > 0.0)) throw StructuralError("c must be positive");
  if (!check_admissible(cfg).admissible())
    throw StructuralError("Gale transform needs an admissible configuration");
  Vec b = Vec::Zero(2 * cfg.m + 1);
  b(2 * cfg.m) = 1.0;
  PolytopeDescription p = standard_polytope(lambda_rows(cfg, c), b);
  if (p.empty) throw std::logic_error("Gale polytope is empty: the Siegel condition fails");
  return p;
}

namespace {

Vec fiber_rhs(const Configuration& cfg, const std::vector<cplx>& w) {
  if (static_cast<int>(w.size()) != cfg.m) throw StructuralError("w must have m entries");
  double wn = 0.0;
  for (cplx x : w) wn += std::norm(x);
  if (!(wn < 1.0)) throw StructuralError("fiber polytope needs sum |w_k|^2 < 1");
  Vec b(2 * cfg.m + 1);
  for (int k = 0; k < cfg.m; ++k) {
    const cplx sq = -w[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(k)];
    b(2 * k) = sq.real();
    b(2 * k + 1) = sq.imag();
  }
  b(2 * cfg.m) = 1.0 - wn;
  return b;
}

}  // namespace

PolytopeDescription fiber_polytope(const Configuration& cfg, const std::vector<cplx>& w) {
  cfg.validate();
  return standard_polytope(lambda_rows(cfg, 1.0), fiber_rhs(cfg, w));
}

double fiber_infeasibility(const Configuration& cfg, const std::vector<cplx>& w) {
  cfg.validate();
  return lp_infeasibility(lambda_rows(cfg, 1.0), fiber_rhs(cfg, w));
}

double polytope_violation(const PolytopeDescription& p, const Vec& t) {
  double v = 0.0;
  for (const auto& e : p.equalities) v = std::max(v, std::abs(e.a.dot(t) - e.b));
  for (const auto& e : p.inequalities) v = std::max(v, e.a.dot(t) - e.b);
  return v;
}

bool in_scaled_hull(const Configuration& cfg, const std::vector<cplx>& w, double c, double tol) {
  Mat pts = c * cfg.lambdas;
  for (int k = 0; k < cfg.m; ++k) {
    pts.row(2 * k).array() -= w[static_cast<std::size_t>(k)].real();
    pts.row(2 * k + 1).array() -= w[static_cast<std::size_t>(k)].imag();
  }
  return hull_l1_distance(pts) <= tol;
}

CEstimate estimate_c(const Configuration& cfg, const std::vector<VarietyPoint>& samples,
                     int max_descent_steps, const SolverOptions& opts) {
  require_mixed_general(cfg);
  if (samples.empty()) throw StructuralError("estimate_c needs at least one sample");
  CEstimate est;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = z_mass(cfg, samples[i].coordinates);
    if (f < best) {
      best = f;
      best_i = i;
    }
    est.running_min.push_back(best);
  }
  est.sample_min = best;
  VarietyPoint cur = samples[best_i];
  double step = 0.1;
  for (int it = 0; it < max_descent_steps && step > 1e-12; ++it) {
    Vec g = Vec::Zero(cfg.ambient_dim());
    g.tail(2 * cfg.n) = 2.0 * cur.coordinates.tail(2 * cfg.n);
    const Vec gt = cur.tangent_frame * (cur.tangent_frame.transpose() * g);
    if (gt.norm() < 1e-14) break;
    const ProjectionResult pr = project_to_variety(cfg, cur.coordinates - step * gt, opts);
    if (pr.ok() && z_mass(cfg, pr.point.coordinates) < best) {
      cur = pr.point;
      best = z_mass(cfg, cur.coordinates);
      step *= 1.5;
      ++est.descent_steps;
    } else {
      step *= 0.5;
    }
  }
  est.c = best;
  est.argmin = cur;
  return est;
}

StarShapedReport star_shaped_check(const Configuration& cfg,
                                   const std::vector<VarietyPoint>& samples, int ray_steps) {
  require_mixed_general(cfg);
  if (ray_steps < 1) throw StructuralError("ray_steps must be positive");
  StarShapedReport rep;
  rep.rays = static_cast<int>(samples.size());
  rep.steps = ray_steps;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto w = moment_map(cfg, samples[i]);
    for (int s = 0; s <= ray_steps; ++s) {
      const double r = static_cast<double>(s) / ray_steps;
      std::vector<cplx> rw;
      for (cplx x : w) rw.push_back(r * x);
      const double inf = fiber_infeasibility(cfg, rw);
      ++rep.checks;
      if (inf > kFeas) {
        rep.ok = false;
        rep.violations.push_back({static_cast<int>(i), r, inf});
      }
    }
  }
  return rep;
}

}  // namespace mam

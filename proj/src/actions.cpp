#include "mam/actions.hpp"

#include <cmath>

namespace mam {
namespace {

void require_mixed_general(const Configuration& cfg) {
  if (cfg.kind != Kind::mixed_general)
    throw StructuralError("mixed-general configuration expected");
}

Vec z_part(const Configuration& cfg, const Vec& x) { return x.tail(2 * cfg.n); }

}  // namespace

void GroupElement::validate(const Configuration& cfg) const {
  if (!torus.empty() && static_cast<int>(torus.size()) != cfg.n)
    throw StructuralError("torus part needs n phases");
  for (cplx u : torus)
    if (std::abs(std::abs(u) - 1.0) > 1e-12) throw StructuralError("torus phases must have modulus 1");
  for (int s : signs)
    if (s != 1 && s != -1) throw StructuralError("signs must be +1 or -1");
}

VarietyPoint torus_act(const Configuration& cfg, const std::vector<cplx>& phases,
                       const VarietyPoint& pt, const SolverOptions& opts) {
  GroupElement{phases, {}, {}}.validate(cfg);
  if (static_cast<int>(phases.size()) != cfg.n) throw StructuralError("torus part needs n phases");
  Vec x = pt.coordinates;
  const int p = cfg.w_count();
  for (int j = 0; j < cfg.n; ++j) set_c(x, p + j, phases[static_cast<std::size_t>(j)] * get_c(x, p + j));
  VarietyPoint out = certify_point(cfg, x, opts);
  out.zero_pattern = pt.zero_pattern;
  return out;
}

VarietyPoint sign_act(const Configuration& cfg, const std::vector<int>& signs,
                      const VarietyPoint& pt, const SolverOptions& opts) {
  require_mixed_general(cfg);
  GroupElement{{}, signs, {}}.validate(cfg);
  if (static_cast<int>(signs.size()) != cfg.m) throw StructuralError("sign part needs m entries");
  Vec x = pt.coordinates;
  for (int k = 0; k < cfg.m; ++k) x.segment(2 * k, 2) *= signs[static_cast<std::size_t>(k)];
  VarietyPoint out = certify_point(cfg, x, opts);
  out.zero_pattern = pt.zero_pattern;
  return out;
}

VarietyPoint foliation_flow(const Configuration& cfg, const VarietyPoint& pt,
                            const std::vector<cplx>& T, const SolverOptions& opts) {
  if (cfg.kind != Kind::classical) throw StructuralError("the leaf flow acts on classical configurations");
  if (static_cast<int>(T.size()) != cfg.m) throw StructuralError("flow part needs m entries");
  Vec x = pt.coordinates;
  for (int j = 0; j < cfg.n; ++j) {
    cplx s = 0.0;
    for (int k = 0; k < cfg.m; ++k) s += T[static_cast<std::size_t>(k)] * cfg.lambda(k, j);
    set_c(x, j, std::polar(1.0, -2.0 * s.real()) * get_c(x, j));
  }
  return certify_point(cfg, x, opts);
}

Vec branched_cover(const Configuration& cfg, const VarietyPoint& pt) {
  require_mixed_general(cfg);
  const Vec z = z_part(cfg, pt.coordinates);
  const double nz = z.norm();
  if (nz == 0.0) throw StructuralError("z-block vanishes");
  return z / nz;
}

std::vector<cplx> quadric_values(const Configuration& cfg, const Vec& z) {
  if (z.size() != 2 * cfg.n) throw StructuralError("direction must lie in C^n");
  std::vector<cplx> f(static_cast<std::size_t>(cfg.m), 0.0);
  for (int k = 0; k < cfg.m; ++k)
    for (int j = 0; j < cfg.n; ++j) f[static_cast<std::size_t>(k)] += cfg.lambda(k, j) * std::norm(get_c(z, j));
  return f;
}

double ray_radius(const Configuration& cfg, const Vec& z) {
  double total = 0.0;
  for (cplx f : quadric_values(cfg, z)) total += std::abs(f);
  const double zn = z.squaredNorm();
  // on the sphere: sum |w_k|^2 + r^2 |z|^2 = r^2 (sum |F_k| + |z|^2) = 1
  auto g = [&](double r) { return r * r * (total + zn) - 1.0; };
  double lo = 0.0, hi = 1.0;
  while (g(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-17 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

FiberCount fiber_count(const Configuration& cfg, const Vec& z, double tol) {
  require_mixed_general(cfg);
  FiberCount fc;
  fc.F = quadric_values(cfg, z);
  fc.radius = ray_radius(cfg, z);
  fc.count = 1;
  for (int k = 0; k < cfg.m; ++k) {
    const double a = std::abs(fc.F[static_cast<std::size_t>(k)]);
    if (a <= tol) {
      fc.branch_slots.push_back(k);
    } else {
      fc.count *= 2;
      if (a <= 10.0 * tol) fc.near_branch = true;
    }
  }
  return fc;
}

std::vector<VarietyPoint> fiber_preimages(const Configuration& cfg, const Vec& z, double tol,
                                          const SolverOptions& opts) {
  const FiberCount fc = fiber_count(cfg, z, tol);
  const double r = fc.radius;
  std::vector<VarietyPoint> out;
  for (int mask = 0; mask < (1 << cfg.m); ++mask) {
    Vec x(cfg.ambient_dim());
    x.tail(2 * cfg.n) = r * z;
    for (int k = 0; k < cfg.m; ++k) {
      const cplx root = std::sqrt(-r * r * fc.F[static_cast<std::size_t>(k)]);
      set_c(x, k, (mask & (1 << k)) ? -root : root);
    }
    VarietyPoint pt;
    try {
      pt = certify_point(cfg, x, opts);
    } catch (const std::runtime_error&) {
      continue;
    }
    if (pt.residual_inf_norm > opts.tol) continue;
    bool dup = false;
    for (const auto& q : out)
      if ((q.coordinates - x).lpNorm<Eigen::Infinity>() <= 2.0 * std::sqrt(tol)) dup = true;
    if (!dup) out.push_back(std::move(pt));
  }
  return out;
}

IsotropyStratum isotropy_stratum(const Configuration& cfg, const VarietyPoint& pt, double tol) {
  require_mixed_general(cfg);
  IsotropyStratum st;
  const auto f = quadric_values(cfg, z_part(cfg, pt.coordinates));
  for (int k = 0; k < cfg.m; ++k) {
    const bool by_f = std::abs(f[static_cast<std::size_t>(k)]) <= tol;
    const bool by_w = std::abs(get_c(pt.coordinates, k)) <= std::sqrt(tol);
    if (by_f) st.K.push_back(k);
    if (by_f != by_w) st.consistent = false;
  }
  return st;
}

}  // namespace mam

#include "mam/forms.hpp"

#include "mam/pfaffian.hpp"

#include <cmath>

namespace mam {
namespace {

double coord_weight(const Configuration& cfg, int q) {
  const int p = cfg.w_count();
  return q < p ? cfg.weights_a[static_cast<std::size_t>(q)]
               : cfg.weights_b[static_cast<std::size_t>(q - p)];
}

void check_dim(const Configuration& cfg, const Vec& v) {
  if (v.size() != cfg.ambient_dim()) throw StructuralError("vector has the wrong ambient dimension");
}

Mat skew_part(const Mat& a) { return 0.5 * (a - a.transpose()); }

// number of T slots in the kernel family
int slot_count(const Configuration& cfg) { return cfg.kind == Kind::mixed_m1 ? 1 : cfg.m; }

}  // namespace

double eval_alpha(const Configuration& cfg, const Vec& x, const Vec& v) {
  check_dim(cfg, x);
  check_dim(cfg, v);
  double sum = 0.0;
  for (int q = 0; q < cfg.ambient_dim() / 2; ++q)
    sum += 2.0 * coord_weight(cfg, q) * (x(2 * q) * v(2 * q + 1) - x(2 * q + 1) * v(2 * q));
  return sum;
}

double eval_dalpha(const Configuration& cfg, const Vec& u, const Vec& v) {
  check_dim(cfg, u);
  check_dim(cfg, v);
  double sum = 0.0;
  for (int q = 0; q < cfg.ambient_dim() / 2; ++q)
    sum += 4.0 * coord_weight(cfg, q) * (u(2 * q) * v(2 * q + 1) - u(2 * q + 1) * v(2 * q));
  return sum;
}

Vec alpha_covector(const Configuration& cfg, const Vec& x) {
  check_dim(cfg, x);
  Vec a(x.size());
  for (int q = 0; q < cfg.ambient_dim() / 2; ++q) {
    const double w = coord_weight(cfg, q);
    a(2 * q) = -2.0 * w * x(2 * q + 1);
    a(2 * q + 1) = 2.0 * w * x(2 * q);
  }
  return a;
}

Mat dalpha_matrix(const Configuration& cfg) {
  Mat d = Mat::Zero(cfg.ambient_dim(), cfg.ambient_dim());
  for (int q = 0; q < cfg.ambient_dim() / 2; ++q) {
    const double w = coord_weight(cfg, q);
    d(2 * q, 2 * q + 1) = 4.0 * w;
    d(2 * q + 1, 2 * q) = -4.0 * w;
  }
  return d;
}

FormEvaluation kernel_analysis(const Configuration& cfg, const VarietyPoint& pt,
                               double rank_tol) {
  const Mat& e = pt.tangent_frame;
  if (e.rows() != cfg.ambient_dim() || e.cols() == 0)
    throw StructuralError("point carries no tangent frame");
  FormEvaluation ev;
  ev.alpha_on_frame = e.transpose() * alpha_covector(cfg, pt.coordinates);
  ev.dalpha_on_frame = skew_part(e.transpose() * dalpha_matrix(cfg) * e);
  const Eigen::Index d = e.cols();

  const RankInfo rm = numerical_rank(ev.dalpha_on_frame, rank_tol);
  ev.ker_dalpha_dim = static_cast<int>(d) - rm.rank;
  ev.ker_dalpha_basis = e * null_space(ev.dalpha_on_frame, rank_tol);

  Mat stacked(d + 1, d);
  stacked << ev.dalpha_on_frame, ev.alpha_on_frame.transpose();
  const RankInfo rs = numerical_rank(stacked, rank_tol);
  ev.ker_alpha_cap_ker_dalpha_dim = static_cast<int>(d) - rs.rank;
  ev.common_kernel_basis = e * null_space(stacked, rank_tol);

  const Mat ka = null_space(ev.alpha_on_frame.transpose(), rank_tol);
  const RankInfo rk = numerical_rank(skew_part(ka.transpose() * ev.dalpha_on_frame * ka), rank_tol);
  ev.rank_dalpha_on_ker_alpha = rk.rank;
  ev.indeterminate = rm.indeterminate || rs.indeterminate || rk.indeterminate;

  if (d % 2 == 1) ev.contact_volume = top_form_value(ev.alpha_on_frame, ev.dalpha_on_frame);
  return ev;
}

KernelVector closed_form_kernel_vector(const Configuration& cfg, const Vec& x,
                                       const KernelParams& params) {
  check_dim(cfg, x);
  if (static_cast<int>(params.T.size()) != slot_count(cfg))
    throw StructuralError("kernel parameters need one T per slot");
  const int p = cfg.w_count();
  const cplx mi(0.0, -1.0);
  KernelVector kv{params, Vec::Zero(x.size())};
  for (int r = 0; r < p; ++r) {
    const cplx t = cfg.kind == Kind::mixed_m1 ? params.T[0] : params.T[static_cast<std::size_t>(r)];
    const cplx w = get_c(x, r);
    set_c(kv.ambient_vector, r,
          mi * (2.0 * std::conj(t) * std::conj(w) + params.mu * w) /
              cfg.weights_a[static_cast<std::size_t>(r)]);
  }
  for (int j = 0; j < cfg.n; ++j) {
    cplx s = 0.0;
    for (int k = 0; k < slot_count(cfg); ++k) s += params.T[static_cast<std::size_t>(k)] * cfg.lambda(k, j);
    const double c = 2.0 * s.real() + params.mu;
    set_c(kv.ambient_vector, p + j,
          mi * c * get_c(x, p + j) / cfg.weights_b[static_cast<std::size_t>(j)]);
  }
  return kv;
}

KernelParams mixed_m1_offstratum_params(const Configuration& cfg, const Vec& x, double t) {
  if (cfg.kind != Kind::mixed_m1) throw StructuralError("mixed-m1 configuration expected");
  cplx sq = 0.0;
  double ab = 0.0;
  for (int r = 0; r < cfg.s; ++r) {
    const cplx w = get_c(x, r);
    const double a = cfg.weights_a[static_cast<std::size_t>(r)];
    sq += w * w / a;
    ab += std::norm(w) / a;
  }
  return {{t * std::conj(sq)}, -2.0 * t * ab};
}

KernelParams mixed_general_params(const Configuration& cfg, const Vec& x, double mu,
                                  const std::vector<cplx>& free_T, double zero_tol) {
  if (cfg.kind != Kind::mixed_general) throw StructuralError("mixed-general configuration expected");
  if (static_cast<int>(free_T.size()) != cfg.m) throw StructuralError("need one free T per slot");
  KernelParams kp;
  kp.mu = mu;
  for (int k = 0; k < cfg.m; ++k) {
    const cplx w = get_c(x, k);
    if (std::abs(w) > zero_tol)
      kp.T.push_back(-0.5 * mu * std::conj(w) / w);
    else
      kp.T.push_back(free_T[static_cast<std::size_t>(k)]);
  }
  return kp;
}

Mat closed_form_kernel_basis(const Configuration& cfg, const VarietyPoint& pt,
                             bool common_only, double rank_tol) {
  const Vec& x = pt.coordinates;
  const int q = slot_count(cfg);
  // generators: T_k = 1, T_k = i for every slot, then mu = 1
  Mat gen(cfg.ambient_dim(), 2 * q + 1);
  for (int k = 0; k < q; ++k) {
    for (int part = 0; part < 2; ++part) {
      KernelParams kp{std::vector<cplx>(static_cast<std::size_t>(q), 0.0), 0.0};
      kp.T[static_cast<std::size_t>(k)] = part == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
      gen.col(2 * k + part) = closed_form_kernel_vector(cfg, x, kp).ambient_vector;
    }
  }
  gen.col(2 * q) =
      closed_form_kernel_vector(cfg, x, {std::vector<cplx>(static_cast<std::size_t>(q), 0.0), 1.0})
          .ambient_vector;
  // the family is linear in the parameters; keep the tangent ones
  Mat cons = system_jacobian(cfg, x) * gen;
  if (common_only) {
    Mat with_alpha(cons.rows() + 1, cons.cols());
    with_alpha << cons, (alpha_covector(cfg, x).transpose() * gen);
    cons = with_alpha;
  }
  // thresholds are relative to the size of the unconstrained family, so an
  // exactly vanishing constraint is not mistaken for a weak one
  const double scale = std::max(1.0, system_jacobian(cfg, x).norm() * gen.norm());
  Eigen::JacobiSVD<Mat> svd(cons, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rank_tol * scale) ++rank;
  const Mat params = svd.matrixV().rightCols(cons.cols() - rank);
  return column_span(gen * params, rank_tol);
}

double contact_volume_threshold(const Configuration& cfg, int frame_dim) {
  const int k = (frame_dim - 1) / 2;
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return 1e-9 * fact * std::pow(cfg.max_weight(), k);
}

std::string to_string(VolumeSign s) {
  switch (s) {
    case VolumeSign::positive:
      return "positive";
    case VolumeSign::negative:
      return "negative";
    case VolumeSign::zero:
      return "zero";
    case VolumeSign::borderline:
      return "borderline";
  }
  return "borderline";
}

VolumeSign classify_volume(double value, double threshold) {
  const double a = std::abs(value);
  if (a <= threshold) return VolumeSign::zero;
  if (a <= 10.0 * threshold) return VolumeSign::borderline;
  return value > 0 ? VolumeSign::positive : VolumeSign::negative;
}

double contact_volume(const Configuration& cfg, const VarietyPoint& pt, int calibration) {
  const Mat& e = pt.tangent_frame;
  if (e.cols() % 2 == 0) throw StructuralError("contact volume needs an odd-dimensional frame");
  const Vec a = e.transpose() * alpha_covector(cfg, pt.coordinates);
  const Mat m = skew_part(e.transpose() * dalpha_matrix(cfg) * e);
  return calibration * top_form_value(a, m);
}

int orientation_calibration(const Configuration& cfg, std::uint64_t seed,
                            const SolverOptions& opts) {
  if (cfg.kind == Kind::classical) return 1;
  const auto pts = sample_points_serial(cfg, 8, seed, opts);
  for (const auto& pt : pts) {
    const double v = contact_volume(cfg, pt, 1);
    const VolumeSign s = classify_volume(v, contact_volume_threshold(cfg, static_cast<int>(pt.tangent_frame.cols())));
    if (s == VolumeSign::positive) return 1;
    if (s == VolumeSign::negative) return -1;
  }
  throw std::runtime_error("no reference point with a definite contact volume");
}

std::string to_string(RankClass c) {
  switch (c) {
    case RankClass::contact:
      return "contact";
    case RankClass::defect2:
      return "defect2";
    case RankClass::deep:
      return "deep";
  }
  return "deep";
}

RankTrichotomy rank_trichotomy(const Configuration& cfg, const VarietyPoint& pt,
                               double rank_tol) {
  const FormEvaluation ev = kernel_analysis(cfg, pt, rank_tol);
  const int k = static_cast<int>(pt.tangent_frame.cols() - 1) / 2;
  RankTrichotomy rt;
  rt.rank = ev.rank_dalpha_on_ker_alpha;
  rt.indeterminate = ev.indeterminate;
  if (rt.rank == 2 * k) {
    rt.cls = RankClass::contact;
    rt.perp_dim = 2 * k;
    rt.perp_basis = pt.tangent_frame * null_space(ev.alpha_on_frame.transpose(), rank_tol);
  } else if (rt.rank == 2 * k - 2) {
    rt.cls = RankClass::defect2;
    rt.perp_dim = 2;
    rt.perp_basis = ev.common_kernel_basis;
  } else {
    rt.cls = RankClass::deep;
    rt.perp_dim = 0;
    rt.perp_basis = Mat(cfg.ambient_dim(), 0);
  }
  return rt;
}

Mat leaf_vectors(const Configuration& cfg, const Vec& x) {
  const int q = slot_count(cfg);
  Mat out(cfg.ambient_dim(), 2 * q);
  for (int k = 0; k < q; ++k)
    for (int part = 0; part < 2; ++part) {
      KernelParams kp{std::vector<cplx>(static_cast<std::size_t>(q), 0.0), 0.0};
      kp.T[static_cast<std::size_t>(k)] = part == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
      out.col(2 * k + part) = closed_form_kernel_vector(cfg, x, kp).ambient_vector;
    }
  return out;
}

int leaf_span_dimension(const Configuration& cfg, const VarietyPoint& pt, double rank_tol) {
  return numerical_rank(leaf_vectors(cfg, pt.coordinates), rank_tol).rank;
}

int symplectic_leaf_rank(const Configuration& cfg, const VarietyPoint& pt, double rank_tol) {
  if (cfg.kind != Kind::classical) throw StructuralError("leaf rank is defined for classical configurations");
  const Mat b = column_span(leaf_vectors(cfg, pt.coordinates), rank_tol);
  const Mat restricted = skew_part(b.transpose() * dalpha_matrix(cfg) * b);
  // entries of d alpha are O(max weight); measure rank against that scale
  Eigen::JacobiSVD<Mat> svd(restricted);
  const double scale = 4.0 * cfg.max_weight();
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > rank_tol * scale) ++rank;
  return rank;
}

}  // namespace mam

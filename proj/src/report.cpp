#include "mam/report.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>

namespace mam {

std::string current_timestamp() {
  std::time_t t;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env)
    t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));
  else
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ojson complex_to_json(cplx c) { return ojson::array({c.real(), c.imag()}); }

ojson vec_to_json(const Vec& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ojson to_json(const RunManifest& m) {
  ojson j;
  j["command"] = m.command;
  j["config_path"] = m.config_path;
  j["config_hash"] = m.config_hash;
  j["seed"] = m.seed;
  j["tolerances"] = {{"tol", m.tol}, {"rank_tol", m.rank_tol}, {"feas_tol", m.feas_tol}};
  j["timestamp"] = m.timestamp;
  j["version"] = m.version;
  return j;
}

ojson to_json(const AdmissibilityReport& r) {
  ojson j;
  j["admissible"] = r.admissible();
  j["siegel"] = r.siegel;
  j["weak_hyperbolicity"] = r.weak_hyperbolicity;
  j["violating_subset"] = r.violating_subset ? ojson(*r.violating_subset) : ojson(nullptr);
  j["hull_dimension"] = r.hull_dimension;
  j["degenerate"] = r.degenerate;
  j["min_subset_distance"] = r.min_subset_distance;
  return j;
}

ojson to_json(const MixedAdmissibility& r) {
  ojson j;
  j["admissible"] = r.admissible;
  j["failing_subsets"] = r.failing;
  return j;
}

ojson to_json(const VarietyPoint& p) {
  ojson j;
  j["coordinates"] = vec_to_json(p.coordinates);
  j["residual_inf_norm"] = p.residual_inf_norm;
  j["jacobian_real_rank"] = p.jacobian_real_rank;
  j["tangent_dim"] = p.tangent_frame.cols();
  j["zero_pattern"] = p.zero_pattern;
  j["iterations"] = p.iterations;
  return j;
}

ojson to_json(const FormEvaluation& f) {
  ojson j;
  j["ker_dalpha_dim"] = f.ker_dalpha_dim;
  j["ker_alpha_cap_ker_dalpha_dim"] = f.ker_alpha_cap_ker_dalpha_dim;
  j["rank_dalpha_on_ker_alpha"] = f.rank_dalpha_on_ker_alpha;
  j["contact_volume"] = f.contact_volume;
  j["indeterminate"] = f.indeterminate;
  return j;
}

ojson to_json(const RankTrichotomy& t) {
  ojson j;
  j["class"] = to_string(t.cls);
  j["rank"] = t.rank;
  j["perp_dim"] = t.perp_dim;
  j["indeterminate"] = t.indeterminate;
  return j;
}

ojson to_json(const DiffeoType& t) {
  ojson j;
  j["n"] = t.n;
  j["s"] = t.s;
  j["d"] = t.d;
  ojson sums = ojson::array();
  for (const auto& sp : t.summands) sums.push_back(ojson::array({sp.p, sp.q}));
  j["summands"] = sums;
  j["manifold_dimension"] = t.manifold_dimension;
  j["description"] = describe(t);
  j["warnings"] = t.warnings;
  return j;
}

ojson to_json(const PolytopeDescription& p) {
  ojson j;
  j["ambient_dim"] = p.ambient_dim;
  j["dim"] = p.dim;
  j["empty"] = p.empty;
  auto cons = [](const std::vector<LinearConstraint>& cs) {
    ojson a = ojson::array();
    for (const auto& c : cs) a.push_back({{"a", vec_to_json(c.a)}, {"b", c.b}});
    return a;
  };
  j["equalities"] = cons(p.equalities);
  j["inequalities"] = cons(p.inequalities);
  if (p.vertices) {
    ojson v = ojson::array();
    for (const auto& x : *p.vertices) v.push_back(vec_to_json(x));
    j["vertices"] = v;
  } else {
    j["vertices"] = nullptr;
  }
  return j;
}

ojson to_json(const FiberCount& f) {
  ojson j;
  j["count"] = f.count;
  j["radius"] = f.radius;
  ojson fs = ojson::array();
  for (cplx c : f.F) fs.push_back(complex_to_json(c));
  j["F"] = fs;
  j["branch_slots"] = f.branch_slots;
  j["near_branch"] = f.near_branch;
  return j;
}

}  // namespace mam

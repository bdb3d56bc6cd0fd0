// One PASS/FAIL line per acceptance criterion. Exit code 1 if any criterion fails.

#include "mam/actions.hpp"
#include "mam/config.hpp"
#include "mam/forms.hpp"
#include "mam/pfaffian.hpp"
#include "mam/topology.hpp"
#include "mam/toric.hpp"
#include "mam/variety.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace mam;

namespace {

// Pinned tolerances.
constexpr double kRankTol = 1e-8;
constexpr double kAngleTol = 1e-6;
constexpr double kTopFormRelTol = 1e-9;
constexpr double kConstraintTol = 1e-9;
constexpr double kIndeterminateShare = 0.01;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void add(const std::string& key, bool ok) {
    auto& e = counts_[key];
    ++e.first;
    if (!ok) ++e.second;
  }
  bool all_ok() const {
    for (const auto& [k, v] : counts_)
      if (v.second != 0) return false;
    return true;
  }
  std::string summary() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : counts_) {
      os << (first ? "" : "; ") << k << " " << v.second << "/" << v.first << " failed";
      first = false;
    }
    return os.str();
  }

 private:
  std::map<std::string, std::pair<int, int>> counts_;
};

Configuration random_config(Philox& rng, int m, int n) {
  std::vector<std::vector<cplx>> l(static_cast<std::size_t>(n), std::vector<cplx>(static_cast<std::size_t>(m)));
  for (auto& v : l)
    for (auto& c : v) c = {rng.gaussian(), rng.gaussian()};
  const double u = rng.uniform();
  if (u < 0.25) {
    // Plant a segment through 0.
    const int a = static_cast<int>(rng.uniform() * n);
    const int b = (a + 1 + static_cast<int>(rng.uniform() * (n - 1))) % n;
    const double t = 0.2 + 2.0 * rng.uniform();
    for (int k = 0; k < m; ++k) l[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)] = -t * l[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)];
  } else if (u < 0.5) {
    // Shift toward a half-space so Siegel fails more often.
    for (auto& v : l) v[0] += cplx(1.5, 0.0);
  }
  return make_classical(l);
}

bool oracle_admissible(const Configuration& cfg) {
  if (!oracle::hull_contains_origin(cfg.lambdas)) return false;
  for (const auto& s : combinations(cfg.n, 2 * cfg.m)) {
    Mat p(cfg.lambdas.rows(), static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) p.col(static_cast<Eigen::Index>(i)) = cfg.lambdas.col(s[i]);
    if (oracle::hull_contains_origin(p)) return false;
  }
  return true;
}

// 1. LP admissibility agrees with brute-force hull membership.
Outcome criterion_admissibility() {
  Philox rng(1001, 0);
  int disagreements = 0, admissible = 0;
  const int total = 500;
  for (int t = 0; t < total; ++t) {
    const int m = 1 + t % 2;
    const int n = 5 + static_cast<int>(rng.uniform() * 4);
    const Configuration cfg = random_config(rng, m, n);
    const AdmissibilityReport r = check_admissible(cfg);
    const bool oracle = oracle_admissible(cfg);
    disagreements += (r.siegel && r.weak_hyperbolicity) != oracle;
    admissible += oracle;
  }
  std::ostringstream os;
  os << disagreements << " disagreements over " << total << " configurations (" << admissible << " admissible)";
  return {disagreements == 0 && admissible > 0 && admissible < total, os.str()};
}

// 2. Maximal Jacobian rank on certified samples.
Outcome criterion_jacobian_rank() {
  int bad = 0, total = 0;
  for (const char* name : {"pentagon", "classical_m2_n6"}) {
    const Configuration cfg = fixtures::load(name);
    for (const VarietyPoint& p : sample_points(cfg, 250, 2)) {
      const int r = numerical_rank(system_jacobian(cfg, p.coordinates), kRankTol).rank;
      bad += r != cfg.equation_count();
      ++total;
    }
  }
  std::ostringstream os;
  os << bad << "/" << total << " samples below rank 2m+1";
  return {bad == 0 && total >= 500, os.str()};
}

struct KernelCase {
  std::string label;
  Configuration cfg;
  std::vector<VarietyPoint> points;
  int ker;
  int common;
};

std::vector<KernelCase> kernel_cases() {
  std::vector<KernelCase> out;
  const Configuration pent = fixtures::pentagon();
  const Configuration c2 = fixtures::load("classical_m2_n6");
  const Configuration s1 = fixtures::load("mixed_m1_s1");
  const Configuration s2 = fixtures::load("mixed_m1_s2");
  const Configuration mg = fixtures::load("mixed_general_m2");
  out.push_back({"classical(1,5)", pent, sample_points(pent, 200, 3), 3, 2});
  out.push_back({"classical(2,6)", c2, sample_points(c2, 200, 3), 5, 4});
  out.push_back({"m1 s=1 off", s1, sample_points(s1, 200, 3), 1, 0});
  out.push_back({"m1 s=1 on", s1, sample_with_zero_pattern(s1, {}, 200, 3), 3, 2});
  out.push_back({"m1 s=2 off", s2, sample_points(s2, 200, 3), 1, 0});
  out.push_back({"m1 s=2 on", s2, sample_with_zero_pattern(s2, {}, 200, 3), 3, 2});
  // Where every w vanishes (a subset of the locus above).
  out.push_back({"m1 s=2 w=0", s2, sample_with_zero_pattern(s2, {0, 1}, 50, 3), 3, 2});
  out.push_back({"mg l=0", mg, sample_points(mg, 200, 3), 1, 0});
  auto l1 = sample_with_zero_pattern(mg, {0}, 100, 3);
  const auto l1b = sample_with_zero_pattern(mg, {1}, 100, 3);
  l1.insert(l1.end(), l1b.begin(), l1b.end());
  out.push_back({"mg l=1", mg, l1, 3, 2});
  out.push_back({"mg l=2", mg, sample_with_zero_pattern(mg, {0, 1}, 200, 3), 5, 4});
  return out;
}

// 3. Kernel dimension table.
Outcome criterion_kernel_dims(const std::vector<KernelCase>& cases) {
  Tally tally;
  int indeterminate = 0, total = 0;
  std::map<std::string, std::map<std::pair<int, int>, int>> seen;
  for (const KernelCase& c : cases)
    for (const VarietyPoint& p : c.points) {
      const FormEvaluation f = kernel_analysis(c.cfg, p, kRankTol);
      tally.add(c.label, f.ker_dalpha_dim == c.ker && f.ker_alpha_cap_ker_dalpha_dim == c.common);
      ++seen[c.label][{f.ker_dalpha_dim, f.ker_alpha_cap_ker_dalpha_dim}];
      indeterminate += f.indeterminate;
      ++total;
    }
  std::ostringstream os;
  os << tally.summary() << "; indeterminate " << indeterminate << "/" << total;
  for (const KernelCase& c : cases) {
    const auto& s = seen[c.label];
    if (s.size() == 1 && s.begin()->first == std::make_pair(c.ker, c.common)) continue;
    os << "; " << c.label << " observed";
    for (const auto& [dims, n] : s) os << " (" << dims.first << "," << dims.second << ")x" << n;
  }
  return {tally.all_ok() && indeterminate < kIndeterminateShare * total, os.str()};
}

// 4. Closed-form family spans the SVD kernels.
Outcome criterion_closed_form(const std::vector<KernelCase>& cases) {
  double worst = 0.0;
  int bad = 0, total = 0;
  for (const KernelCase& c : cases)
    for (const VarietyPoint& p : c.points) {
      const FormEvaluation f = kernel_analysis(c.cfg, p, kRankTol);
      const double a = largest_principal_angle(closed_form_kernel_basis(c.cfg, p, false, kRankTol), f.ker_dalpha_basis);
      const double b = largest_principal_angle(closed_form_kernel_basis(c.cfg, p, true, kRankTol), f.common_kernel_basis);
      worst = std::max({worst, a, b});
      bad += std::max(a, b) >= kAngleTol;
      ++total;
    }
  std::ostringstream os;
  os << bad << "/" << total << " samples over " << kAngleTol << " rad; largest angle " << worst;
  return {bad == 0, os.str()};
}

// 5. Confoliation positivity.
Outcome criterion_confoliation() {
  Tally tally;
  std::ostringstream extra;
  auto run = [&](const std::string& label, const Configuration& cfg, const std::vector<VarietyPoint>& off,
                 const std::vector<VarietyPoint>& on) {
    const int cal = orientation_calibration(cfg, 0);
    const double thr = contact_volume_threshold(cfg, cfg.tangent_dim());
    double min_off = std::numeric_limits<double>::infinity(), max_on = 0.0;
    for (const VarietyPoint& p : off) {
      const double v = contact_volume(cfg, p, cal);
      tally.add(label + " off", v > 0.0);
      min_off = std::min(min_off, v);
    }
    for (const VarietyPoint& p : on) {
      const double v = contact_volume(cfg, p, cal);
      tally.add(label + " on", std::abs(v) < thr);
      max_on = std::max(max_on, std::abs(v));
    }
    extra << "; " << label;
    if (!off.empty()) extra << " min off " << min_off << ",";
    extra << " max |on| " << max_on << " (threshold " << thr << ")";
  };
  const Configuration s1 = fixtures::load("mixed_m1_s1");
  const Configuration s2 = fixtures::load("mixed_m1_s2");
  const Configuration mg = fixtures::load("mixed_general_m2");
  run("m1 s=1", s1, sample_points(s1, 200, 5), sample_with_zero_pattern(s1, {}, 200, 5));
  run("m1 s=2", s2, sample_points(s2, 200, 5), sample_with_zero_pattern(s2, {}, 200, 5));
  run("m1 s=2 w=0", s2, {}, sample_with_zero_pattern(s2, {0, 1}, 50, 5));
  auto mg_on = sample_with_zero_pattern(mg, {0}, 70, 5);
  for (const std::vector<int>& K : {std::vector<int>{1}, std::vector<int>{0, 1}}) {
    const auto more = sample_with_zero_pattern(mg, K, 65, 5);
    mg_on.insert(mg_on.end(), more.begin(), more.end());
  }
  run("mg m=2", mg, sample_points(mg, 200, 5), mg_on);
  return {tally.all_ok(), tally.summary() + extra.str()};
}

// 6. Fast top-form value against the permutation-sum oracle.
Outcome criterion_pfaffian() {
  Philox rng(1006, 0);
  int bad = 0, total = 0;
  double worst = 0.0;
  for (int d : {3, 5, 7, 9})
    for (int t = 0; t < 250; ++t) {
      const Vec alpha = fixtures::random_vec(rng, d);
      Mat a(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = rng.gaussian();
      const Mat omega = a - a.transpose();
      double mag = 0.0;
      const double brute = oracle::top_form_permutations(alpha, omega, &mag);
      const double fast = top_form_value(alpha, omega);
      // Relative to the value, guarded by the size of the terms that cancel in it.
      const double rel = std::abs(fast - brute) / std::max(std::abs(brute), 1e-3 * mag);
      worst = std::max(worst, rel);
      bad += rel > kTopFormRelTol;
      ++total;
    }
  std::ostringstream os;
  os << bad << "/" << total << " pairs over relative " << kTopFormRelTol << "; worst " << worst;
  return {bad == 0, os.str()};
}

// 7. Rank of d alpha on the leaf span.
Outcome criterion_leaf_rank() {
  int bad = 0, total = 0;
  std::map<int, int> ranks, spans;
  for (const char* name : {"pentagon", "classical_m2_n6"}) {
    const Configuration cfg = fixtures::load(name);
    for (const VarietyPoint& p : sample_points(cfg, 100, 7)) {
      const int r = symplectic_leaf_rank(cfg, p, kRankTol);
      ++ranks[r];
      ++spans[leaf_span_dimension(cfg, p, kRankTol)];
      bad += r != 2 * cfg.m;
      ++total;
    }
  }
  std::ostringstream os;
  os << bad << "/" << total << " samples without rank 2m; ranks seen";
  for (const auto& [r, n] : ranks) os << " " << r << "x" << n;
  os << "; leaf span dims";
  for (const auto& [r, n] : spans) os << " " << r << "x" << n;
  return {bad == 0, os.str()};
}

// 8. Topology classifier.
Outcome criterion_topology() {
  Philox rng(1008, 0);
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const int len = 3 + 2 * static_cast<int>(rng.uniform() * 5);
    CyclicWeights w;
    for (int i = 0; i < len; ++i) w.weights.push_back(1 + static_cast<int>(rng.uniform() * 6));
    const int s = 1 + static_cast<int>(rng.uniform() * 5);
    const DiffeoType d = classify(w, s);
    bool ok = d.manifold_dimension == 2 * w.total() + 2 * s - 3 && d.d == oracle::window_sums(w.weights);
    for (const SpherePair& p : d.summands) ok = ok && p.p + p.q == d.manifold_dimension;
    bad += !ok;
  }
  const bool pent = normalize_configuration(fixtures::pentagon()).weights == std::vector<int>{1, 1, 1, 1, 1};
  const DiffeoType five = classify({{1, 1, 1, 1, 1}}, 1);
  const bool fives = five.summands == std::vector<SpherePair>(5, SpherePair{4, 5}) && five.manifold_dimension == 9;
  std::ostringstream os;
  os << bad << "/1000 invariant failures; pentagon -> (1,1,1,1,1) " << (pent ? "yes" : "no") << "; (1,1,1,1,1), s=1 -> "
     << describe(five);
  return {bad == 0 && pent && fives, os.str()};
}

// 9. Branched covering of order 2^m.
Outcome criterion_cover() {
  Tally tally;
  Philox rng(1009, 0);
  std::vector<Configuration> cfgs;
  {
    std::vector<std::vector<cplx>> l;
    for (cplx c : fixtures::pentagon_lambdas()) l.push_back({c});
    cfgs.push_back(make_mixed_general(l));
  }
  cfgs.push_back(fixtures::load("mixed_general_m2"));
  cfgs.push_back(fixtures::load("mixed_general_m3"));
  for (const Configuration& mg : cfgs) {
    const std::string tag = "m=" + std::to_string(mg.m);
    const int order = 1 << mg.m;
    for (int t = 0; t < 100; ++t) {
      Vec z = fixtures::random_vec(rng, 2 * mg.n);
      z /= z.norm();
      const FiberCount fc = fiber_count(mg, z);
      const auto pre = fiber_preimages(mg, z);
      bool back = true;
      for (const VarietyPoint& p : pre) back = back && (branched_cover(mg, p) - z).norm() < 1e-9;
      tally.add(tag + " generic", fc.count == order && static_cast<int>(pre.size()) == order && back);
    }
    Configuration classical = mg;
    classical.kind = Kind::classical;
    classical.weights_a.clear();
    for (const VarietyPoint& p : sample_points(classical, 20, 9)) {
      const Vec z = p.coordinates / p.coordinates.norm();
      tally.add(tag + " M1", fiber_count(mg, z).count == 1 && fiber_preimages(mg, z).size() == 1);
    }
    for (const VarietyPoint& p : sample_points(mg, 20, 9)) {
      std::vector<Vec> orbit;
      for (int mask = 0; mask < order; ++mask) {
        std::vector<int> s;
        for (int k = 0; k < mg.m; ++k) s.push_back(mask & (1 << k) ? -1 : 1);
        orbit.push_back(sign_act(mg, s, p).coordinates);
      }
      bool distinct = true;
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (std::size_t j = i + 1; j < orbit.size(); ++j) distinct = distinct && (orbit[i] - orbit[j]).norm() > 1e-6;
      tally.add(tag + " orbit", distinct);
    }
  }
  return {tally.all_ok(), tally.summary()};
}

// 10. Toric layer.
Outcome criterion_toric() {
  std::ostringstream os;
  bool ok = true;
  for (const char* name : {"pentagon", "classical_m2_n6", "mixed_general_m2", "mixed_general_m3"}) {
    const Configuration cfg = fixtures::load(name);
    const int dim = gale_transform(cfg).dim;
    ok = ok && dim == cfg.n - 2 * cfg.m - 1;
    os << name << " Gale dim " << dim << "; ";
  }
  for (const char* name : {"mixed_general_m2", "mixed_general_m3"}) {
    const Configuration mg = fixtures::load(name);
    const auto pts = sample_points(mg, 200, 10);
    double worst = 0.0;
    for (const VarietyPoint& p : pts) worst = std::max(worst, big_moment_violation(mg, big_moment_map(mg, p)));
    std::vector<VarietyPoint> rays(pts.begin(), pts.begin() + 50);
    const StarShapedReport star = star_shaped_check(mg, rays, 20);
    const CEstimate c = estimate_c(mg, pts);
    ok = ok && worst <= kConstraintTol && star.ok && star.rays == 50 && c.c > 0.0 && c.c < 1.0;
    os << name << " max P(Lambda) violation " << worst << ", star " << star.checks << " checks "
       << star.violations.size() << " violations, c ~ " << c.c << "; ";
  }
  std::string s = os.str();
  s.resize(s.size() - 2);
  return {ok, s};
}

std::string run_capture(const std::string& cmd, int* code) {
  std::string out;
  FILE* f = ::popen(cmd.c_str(), "r");
  if (!f) {
    *code = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  const int st = ::pclose(f);
  *code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

// 11. Byte-identical JSON reports from identical manifests.
Outcome criterion_reproducibility() {
  const std::string cli = MAM_CLI_PATH;
  const std::string cfgdir = MAM_CONFIG_DIR;
  const std::vector<std::string> runs = {
      "verify " + cfgdir + "/mixed_general_m2.json --samples 60 --seed 11 --json",
      "verify " + cfgdir + "/pentagon.json --samples 60 --seed 11 --json",
      "sample " + cfgdir + "/mixed_m1_s2.json --samples 20 --seed 4 --json",
      "cover " + cfgdir + "/mixed_general_m3.json --seed 4 --json",
  };
  int identical = 0;
  std::ostringstream os;
  for (const std::string& args : runs) {
    int c1 = 0, c2 = 0;
    const std::string a = run_capture("SOURCE_DATE_EPOCH=1700000000 OMP_NUM_THREADS=1 " + cli + " " + args, &c1);
    const std::string b = run_capture("SOURCE_DATE_EPOCH=1700000000 OMP_NUM_THREADS=4 " + cli + " " + args, &c2);
    const bool same = !a.empty() && a == b && c1 == c2 && a.front() == '{';
    identical += same;
    if (!same) os << "differs: " << args << "; ";
  }
  os << identical << "/" << runs.size() << " report pairs byte-identical across thread counts";
  return {identical == static_cast<int>(runs.size()), os.str()};
}

}  // namespace

int main() {
  const auto cases = kernel_cases();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"admissibility oracle equivalence", criterion_admissibility},
      {"Jacobian regularity", criterion_jacobian_rank},
      {"kernel dimension table", [&] { return criterion_kernel_dims(cases); }},
      {"closed-form kernel agreement", [&] { return criterion_closed_form(cases); }},
      {"confoliation positivity", criterion_confoliation},
      {"Pfaffian oracle", criterion_pfaffian},
      {"leaf rank of d alpha", criterion_leaf_rank},
      {"topology classifier", criterion_topology},
      {"branched covering order", criterion_cover},
      {"toric layer", criterion_toric},
      {"reproducibility", criterion_reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2zu %s  %s: %s [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

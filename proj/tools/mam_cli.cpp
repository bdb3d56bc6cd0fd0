// mam: admissibility checks, kernel/contact verification, topology and toric
// data for moment-angle manifolds and their mixed-type relatives.

#include "mam/config_io.hpp"
#include "mam/report.hpp"
#include "mam/random.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <memory>
#include <iostream>
#include <sstream>

using namespace mam;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  double tol = 1e-10;
  double rank_tol = kDefaultRankTol;
  double feas_tol = kDefaultFeasTol;
  int samples = 100;
  std::uint64_t seed = 1;
  bool json = false;
  bool text = false;
  std::string out;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) { return format_number(x); }

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stoi(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: '" + s + "'");
    }
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number list: '" + s + "'");
    }
  }
  return out;
}

SolverOptions solver_opts(const Globals& g) {
  SolverOptions o;
  o.tol = g.tol;
  o.rank_tol = g.rank_tol;
  return o;
}

RunManifest manifest(const Globals& g, const std::string& command, const std::string& path,
                     const Configuration* cfg) {
  RunManifest m;
  m.command = command;
  m.config_path = path;
  m.config_hash = cfg ? config_hash(*cfg) : "";
  m.seed = g.seed;
  m.tol = g.tol;
  m.rank_tol = g.rank_tol;
  m.feas_tol = g.feas_tol;
  m.timestamp = current_timestamp();
  return m;
}

void emit(const Globals& g, const ojson& report, const std::string& text) {
  if (g.json && !g.text)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text;
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) throw std::runtime_error("cannot write '" + g.out + "'");
    f << report.dump(2) << "\n";
  }
}

// --- check ---------------------------------------------------------------

int cmd_check(const Globals& g, const std::string& path) {
  const Configuration cfg = load_config(path);
  ojson rep;
  rep["manifest"] = to_json(manifest(g, "check", path, &cfg));
  rep["config"] = config_to_json(cfg);
  std::ostringstream txt;
  bool ok;
  txt << "configuration: " << to_string(cfg.kind) << ", m = " << cfg.m << ", n = " << cfg.n << "\n";
  for (const auto& w : cfg.hypothesis_warnings()) txt << "warning: " << w << "\n";
  if (cfg.kind == Kind::mixed_general) {
    const MixedAdmissibility ma = check_mixed_admissible(cfg, g.feas_tol);
    ok = ma.admissible;
    rep["admissibility"] = to_json(ma);
    txt << "mixed admissible: " << (ok ? "yes" : "no") << "\n";
    for (const auto& k : ma.failing) {
      txt << "  failing component set:";
      for (int x : k) txt << " " << x;
      txt << "\n";
    }
  } else {
    const AdmissibilityReport ar = check_admissible(cfg, g.feas_tol);
    ok = ar.admissible();
    rep["admissibility"] = to_json(ar);
    txt << "siegel: " << (ar.siegel ? "yes" : "no") << "\n";
    txt << "weak hyperbolicity: " << (ar.weak_hyperbolicity ? "yes" : "no") << "\n";
    if (ar.violating_subset) {
      txt << "violating subset:";
      for (int x : *ar.violating_subset) txt << " " << x;
      txt << "\n";
    }
    if (ar.degenerate) txt << "degenerate: a subset hull passes within 10x tolerance of 0\n";
    txt << "admissible: " << (ok ? "yes" : "no") << "\n";
  }
  rep["hypothesis_warnings"] = cfg.hypothesis_warnings();
  emit(g, rep, txt.str());
  return ok ? kExitPass : kExitFail;
}

// --- verify --------------------------------------------------------------

struct Tally {
  std::string name;
  int passed = 0;
  int total = 0;
  void add(bool ok) {
    ++total;
    if (ok) ++passed;
  }
  bool ok() const { return passed == total; }
};

struct StratumPlan {
  std::string label;
  std::vector<VarietyPoint> points;
  int expect_ker = 0;
  int expect_common = 0;
  bool expect_contact = false;  // positive volume, otherwise zero
};

int cmd_verify(const Globals& g, const std::string& path) {
  const Configuration cfg = load_config(path);
  if (!is_admissible_for_kind(cfg, g.feas_tol)) {
    std::cerr << "configuration is not admissible\n";
    return kExitFail;
  }
  const SolverOptions opts = solver_opts(g);
  const int m = cfg.m;
  std::vector<StratumPlan> plans;
  switch (cfg.kind) {
    case Kind::classical:
      plans.push_back({"generic", sample_points(cfg, g.samples, g.seed, opts), 2 * m + 1, 2 * m, false});
      break;
    case Kind::mixed_m1:
      plans.push_back({"sum w^2 != 0", sample_points(cfg, g.samples, g.seed, opts), 1, 0, true});
      plans.push_back({"W_s (sum w^2 = 0)",
                       sample_with_zero_pattern(cfg, {}, g.samples, g.seed + 1, opts), 3, 2, false});
      if (cfg.s > 1) {
        std::vector<int> all;
        for (int r = 0; r < cfg.s; ++r) all.push_back(r);
        plans.push_back({"w = 0", sample_with_zero_pattern(cfg, all, g.samples, g.seed + 2, opts),
                         3, 2, false});
      }
      break;
    case Kind::mixed_general:
      plans.push_back({"no w_k = 0", sample_points(cfg, g.samples, g.seed, opts), 1, 0, true});
      for (int mask = 1; mask < (1 << m); ++mask) {
        std::vector<int> K;
        std::string label = "w_k = 0 for k in {";
        for (int k = 0; k < m; ++k)
          if (mask & (1 << k)) {
            label += (K.empty() ? "" : ",") + std::to_string(k);
            K.push_back(k);
          }
        label += "}";
        const int ell = static_cast<int>(K.size());
        plans.push_back({label,
                         sample_with_zero_pattern(cfg, K, g.samples,
                                                  g.seed + static_cast<std::uint64_t>(mask), opts),
                         2 * ell + 1, 2 * ell, false});
      }
      break;
  }
  const int calibration = orientation_calibration(cfg, g.seed, opts);

  ojson rep;
  rep["manifest"] = to_json(manifest(g, "verify", path, &cfg));
  rep["config"] = config_to_json(cfg);
  rep["orientation_calibration"] = calibration;
  ojson strata = ojson::array();
  std::ostringstream txt;
  bool all_ok = true;

  for (const auto& plan : plans) {
    Tally rank{"Jacobian rank " + std::to_string(cfg.equation_count())};
    Tally kerdim{"ker d alpha dim " + std::to_string(plan.expect_ker)};
    Tally common{"ker alpha cap ker d alpha dim " + std::to_string(plan.expect_common)};
    Tally closed{"closed-form kernel span"};
    Tally vol{plan.expect_contact ? "contact volume > 0" : "contact volume = 0"};
    Tally leafdim{"leaf span dimension " + std::to_string(2 * m)};
    int indeterminate = 0;
    int leaf_dalpha_max = 0;
    for (const auto& pt : plan.points) {
      rank.add(pt.jacobian_real_rank == cfg.equation_count());
      const FormEvaluation ev = kernel_analysis(cfg, pt, g.rank_tol);
      if (ev.indeterminate) ++indeterminate;
      kerdim.add(!ev.indeterminate && ev.ker_dalpha_dim == plan.expect_ker);
      common.add(!ev.indeterminate && ev.ker_alpha_cap_ker_dalpha_dim == plan.expect_common);
      closed.add(largest_principal_angle(closed_form_kernel_basis(cfg, pt, false, g.rank_tol),
                                         ev.ker_dalpha_basis) < 1e-6);
      const double v = calibration * ev.contact_volume;
      const VolumeSign sign =
          classify_volume(v, contact_volume_threshold(cfg, static_cast<int>(pt.tangent_frame.cols())));
      vol.add(sign == (plan.expect_contact ? VolumeSign::positive : VolumeSign::zero));
      if (cfg.kind == Kind::classical) {
        leafdim.add(leaf_span_dimension(cfg, pt, g.rank_tol) == 2 * m);
        leaf_dalpha_max = std::max(leaf_dalpha_max, symplectic_leaf_rank(cfg, pt, g.rank_tol));
      }
    }
    std::vector<Tally> tallies{rank, kerdim, common, closed, vol};
    if (cfg.kind == Kind::classical) tallies.push_back(leafdim);

    txt << "[" << plan.label << "] " << plan.points.size() << " samples\n";
    ojson s;
    s["stratum"] = plan.label;
    s["samples"] = plan.points.size();
    s["indeterminate"] = indeterminate;
    ojson checks = ojson::array();
    for (const auto& t : tallies) {
      txt << "  " << t.name << ": " << (t.ok() ? "PASS" : "FAIL") << " (" << t.passed << "/"
          << t.total << ")\n";
      checks.push_back({{"check", t.name}, {"passed", t.passed}, {"total", t.total}, {"ok", t.ok()}});
      all_ok = all_ok && t.ok();
    }
    if (cfg.kind == Kind::classical) {
      txt << "  d alpha rank on leaf span (max over samples): " << leaf_dalpha_max << "\n";
      s["dalpha_rank_on_leaf_span_max"] = leaf_dalpha_max;
    }
    if (indeterminate > 0) txt << "  indeterminate rank flags: " << indeterminate << "\n";
    s["checks"] = checks;
    strata.push_back(s);
  }
  rep["strata"] = strata;
  rep["pass"] = all_ok;
  txt << (all_ok ? "verify: PASS" : "verify: FAIL") << "\n";
  emit(g, rep, txt.str());
  return all_ok ? kExitPass : kExitFail;
}

// --- classify ------------------------------------------------------------

int cmd_classify(const Globals& g, const std::string& path, const std::string& weights, int s) {
  CyclicWeights cw;
  int s_used = s;
  std::unique_ptr<Configuration> cfg;
  if (!weights.empty()) {
    cw.weights = parse_int_list(weights);
    if (cw.weights.size() < 3 || cw.weights.size() % 2 == 0)
      throw UsageError("--weights needs an odd number (>= 3) of entries");
  } else if (!path.empty()) {
    cfg = std::make_unique<Configuration>(load_config(path));
    if (cfg->m != 1) throw UsageError("classification needs a planar (m = 1) configuration");
    if (s_used <= 0 && cfg->kind == Kind::mixed_m1) s_used = cfg->s;
    cw = normalize_configuration(*cfg);
  } else {
    throw UsageError("give --weights or a configuration file");
  }
  if (s_used < 1) throw UsageError("--s must be at least 1");
  const DiffeoType t = classify(cw, s_used);
  ojson rep;
  rep["manifest"] = to_json(manifest(g, "classify", path, cfg.get()));
  rep["weights"] = cw.weights;
  rep["type"] = to_json(t);
  std::ostringstream txt;
  txt << describe(t) << ", dim " << t.manifold_dimension << "\n";
  for (const auto& w : t.warnings) txt << "warning: " << w << "\n";
  emit(g, rep, txt.str());
  return kExitPass;
}

// --- gale ----------------------------------------------------------------

int cmd_gale(const Globals& g, const std::string& path, double c) {
  const Configuration cfg = load_config(path);
  if (!is_admissible_for_kind(cfg, g.feas_tol)) {
    std::cerr << "configuration is not admissible\n";
    return kExitFail;
  }
  const PolytopeDescription p = gale_transform(cfg, c);
  ojson rep;
  rep["manifest"] = to_json(manifest(g, "gale", path, &cfg));
  rep["c"] = c;
  rep["polytope"] = to_json(p);
  std::ostringstream txt;
  txt << "Gale polytope: dim " << p.dim << " (expected " << cfg.n - 2 * cfg.m - 1 << ")";
  if (p.vertices) txt << ", " << p.vertices->size() << " vertices";
  txt << "\n";
  if (p.vertices)
    for (const auto& v : *p.vertices) {
      txt << " ";
      for (Eigen::Index i = 0; i < v.size(); ++i) txt << " " << num(v(i));
      txt << "\n";
    }
  emit(g, rep, txt.str());
  return p.dim == cfg.n - 2 * cfg.m - 1 ? kExitPass : kExitFail;
}

// --- cover ---------------------------------------------------------------

int cmd_cover(const Globals& g, const std::string& path, const std::string& direction) {
  const Configuration cfg = load_config(path);
  if (cfg.kind != Kind::mixed_general) throw UsageError("cover needs a mixed-general configuration");
  Vec z(2 * cfg.n);
  if (!direction.empty()) {
    const auto d = parse_double_list(direction);
    if (static_cast<int>(d.size()) != 2 * cfg.n)
      throw UsageError("--direction needs 2n numbers (re, im per coordinate)");
    for (int i = 0; i < 2 * cfg.n; ++i) z(i) = d[static_cast<std::size_t>(i)];
  } else {
    Philox rng(g.seed, 0);
    for (int i = 0; i < 2 * cfg.n; ++i) z(i) = rng.gaussian();
  }
  if (z.norm() == 0.0) throw UsageError("direction must be nonzero");
  z.normalize();
  const double ftol = 1e-9;
  const FiberCount fc = fiber_count(cfg, z, ftol);
  const auto pre = fiber_preimages(cfg, z, ftol, solver_opts(g));
  ojson rep;
  rep["manifest"] = to_json(manifest(g, "cover", path, &cfg));
  rep["direction"] = vec_to_json(z);
  rep["fiber"] = to_json(fc);
  rep["certified_preimages"] = pre.size();
  std::ostringstream txt;
  const int ell = cfg.m - static_cast<int>(fc.branch_slots.size());
  txt << "fiber count " << fc.count << " = 2^" << ell << " (generic order 2^" << cfg.m << ")\n";
  txt << "certified preimages: " << pre.size() << "\n";
  txt << "ray radius: " << num(fc.radius) << "\n";
  if (fc.near_branch) txt << "warning: direction is close to the branch locus\n";
  emit(g, rep, txt.str());
  return static_cast<int>(pre.size()) == fc.count ? kExitPass : kExitFail;
}

// --- count ---------------------------------------------------------------

int cmd_count(const Globals& g, int n, bool reflection, bool list) {
  if (n < 1) throw UsageError("--n must be positive");
  const Equivalence eq = reflection ? Equivalence::dihedral : Equivalence::rotation;
  const auto reps = enumerate_diffeo_types(n, eq);
  ojson rep;
  rep["manifest"] = to_json(manifest(g, "count", "", nullptr));
  rep["n"] = n;
  rep["equivalence"] = to_string(eq);
  rep["count"] = reps.size();
  rep["representatives"] = reps;
  std::ostringstream txt;
  txt << reps.size() << "\n";
  if (n <= 3) txt << "warning: hypothesis violation: n > 3 fails (n = " << n << ")\n";
  if (list)
    for (const auto& r : reps) {
      for (std::size_t i = 0; i < r.size(); ++i) txt << (i ? "," : "") << r[i];
      txt << "\n";
    }
  emit(g, rep, txt.str());
  return kExitPass;
}

// --- sample --------------------------------------------------------------

int cmd_sample(const Globals& g, const std::string& path, const std::string& pattern,
               bool stratum) {
  const Configuration cfg = load_config(path);
  const SolverOptions opts = solver_opts(g);
  std::vector<VarietyPoint> pts;
  if (stratum || !pattern.empty())
    pts = sample_with_zero_pattern(cfg, parse_int_list(pattern), g.samples, g.seed, opts);
  else
    pts = sample_points(cfg, g.samples, g.seed, opts);
  ojson rep;
  rep["manifest"] = to_json(manifest(g, "sample", path, &cfg));
  ojson arr = ojson::array();
  std::ostringstream txt;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ojson p = to_json(pts[i]);
    p["index"] = i;
    arr.push_back(p);
    txt << i << ":";
    for (Eigen::Index c = 0; c < pts[i].coordinates.size(); ++c) txt << " " << num(pts[i].coordinates(c));
    txt << "  residual " << num(pts[i].residual_inf_norm) << "\n";
  }
  rep["points"] = arr;
  emit(g, rep, txt.str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment-angle manifold toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);
  Globals g;
  auto add_globals = [&](CLI::App* sub) {
    sub->add_option("--tol", g.tol, "Residual certification tolerance");
    sub->add_option("--rank-tol", g.rank_tol, "Relative singular-value threshold");
    sub->add_option("--samples", g.samples, "Samples per stratum")->check(CLI::PositiveNumber);
    sub->add_option("--seed", g.seed, "Random seed");
    auto* j = sub->add_flag("--json", g.json, "Print the JSON report");
    auto* t = sub->add_flag("--text", g.text, "Print the text summary (default)");
    j->excludes(t);
    sub->add_option("--out", g.out, "Also write the JSON report to FILE");
  };

  std::string config;
  auto* check = app.add_subcommand("check", "Admissibility of a configuration");
  check->add_option("config", config, "Configuration JSON")->required();
  add_globals(check);

  auto* verify = app.add_subcommand("verify", "Kernel, contact and leaf checks on sampled points");
  verify->add_option("config", config, "Configuration JSON")->required();
  add_globals(verify);

  std::string weights;
  int s_param = 0;
  auto* classify_cmd = app.add_subcommand("classify", "Diffeomorphism type from cyclic weights");
  classify_cmd->add_option("config", config, "Planar configuration JSON");
  classify_cmd->add_option("--weights", weights, "Comma-separated cyclic weights");
  classify_cmd->add_option("--s", s_param, "Number of w-coordinates (s >= 1)");
  add_globals(classify_cmd);

  double c_value = 1.0;
  auto* gale = app.add_subcommand("gale", "Gale polytope of a configuration");
  gale->add_option("config", config, "Configuration JSON")->required();
  gale->add_option("--c", c_value, "Scale factor c > 0")->check(CLI::PositiveNumber);
  add_globals(gale);

  std::string direction;
  auto* cover = app.add_subcommand("cover", "Fiber of the branched covering over a direction");
  cover->add_option("config", config, "Mixed-general configuration JSON")->required();
  cover->add_option("--direction", direction, "Comma-separated re,im pairs (default: random)");
  add_globals(cover);

  int count_n = 0;
  bool reflection = false, list = false;
  auto* count = app.add_subcommand("count", "Number of diffeomorphism types N(n)");
  count->add_option("--n", count_n, "Number of vectors")->required();
  count->add_flag("--reflection", reflection, "Identify sequences up to reversal as well");
  count->add_flag("--list", list, "List representatives");
  add_globals(count);

  std::string pattern;
  bool stratum = false;
  auto* sample = app.add_subcommand("sample", "Certified points on the variety");
  sample->add_option("config", config, "Configuration JSON")->required();
  sample->add_option("--pattern", pattern, "Zero pattern K (comma-separated w indices)");
  sample->add_flag("--stratum", stratum, "mixed-m1: sample the sum w^2 = 0 locus");
  add_globals(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check) return cmd_check(g, config);
    if (*verify) return cmd_verify(g, config);
    if (*classify_cmd) return cmd_classify(g, config, weights, s_param);
    if (*gale) return cmd_gale(g, config, c_value);
    if (*cover) return cmd_cover(g, config, direction);
    if (*count) return cmd_count(g, count_n, reflection, list);
    if (*sample) return cmd_sample(g, config, pattern, stratum);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PartialSampleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

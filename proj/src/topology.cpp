#include "mam/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace mam {

int CyclicWeights::total() const {
  int t = 0;
  for (int w : weights) t += w;
  return t;
}

DiffeoType classify(const CyclicWeights& cw, int s) {
  const auto& w = cw.weights;
  if (w.size() < 3 || w.size() % 2 == 0)
    throw StructuralError("cyclic weights must have odd length >= 3");
  for (int x : w)
    if (x < 1) throw StructuralError("cyclic weights must be positive");
  if (s < 1) throw StructuralError("s must be at least 1");
  DiffeoType t;
  t.n = cw.total();
  t.s = s;
  t.manifold_dimension = 2 * t.n + 2 * s - 3;
  const int len = static_cast<int>(w.size());
  const int ell = cw.ell();
  for (int j = 0; j < len; ++j) {
    int d = 0;
    for (int i = 0; i < ell; ++i) d += w[static_cast<std::size_t>((j + i) % len)];
    t.d.push_back(d);
    const SpherePair sp{2 * d + s - 1, 2 * t.n - 2 * d + s - 2};
    if (sp.p + sp.q != t.manifold_dimension)
      throw std::logic_error("sphere product dimensions do not add up");
    t.summands.push_back(sp);
  }
  if (t.n <= 3)
    t.warnings.push_back("hypothesis violation: n > 3 fails (n = " + std::to_string(t.n) + ")");
  return t;
}

std::string describe(const DiffeoType& t) {
  std::map<SpherePair, int> groups;
  for (const auto& sp : t.summands) ++groups[sp];
  std::string out;
  for (const auto& [sp, count] : groups) {
    if (!out.empty()) out += " # ";
    if (count > 1) out += "#" + std::to_string(count) + " ";
    out += "(S^" + std::to_string(sp.p) + " x S^" + std::to_string(sp.q) + ")";
  }
  return out;
}

CyclicWeights normalize_configuration(const Configuration& cfg, double angle_tol) {
  if (cfg.m != 1) throw StructuralError("polygon normal form needs m = 1");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto wrap = [&](double a) {
    a = std::fmod(a, two_pi);
    return a < 0 ? a + two_pi : a;
  };
  auto circ_dist = [&](double a, double b) {
    const double d = std::abs(wrap(a - b));
    return std::min(d, two_pi - d);
  };
  std::vector<double> ang;
  for (int j = 0; j < cfg.n; ++j) {
    const cplx l = cfg.lambda(0, j);
    if (std::abs(l) < 1e-12) throw StructuralError("lambda_" + std::to_string(j) + " is zero");
    ang.push_back(wrap(std::arg(l)));
  }
  for (int i = 0; i < cfg.n; ++i)
    for (int j = 0; j < cfg.n; ++j)
      if (circ_dist(ang[static_cast<std::size_t>(i)], ang[static_cast<std::size_t>(j)] + std::numbers::pi) <= angle_tol)
        throw StructuralError("lambda_" + std::to_string(i) + " and lambda_" + std::to_string(j) +
                              " are antipodal: weak hyperbolicity fails");

  // events on the circle: (angle, is_antipode, index)
  struct Event {
    double a;
    bool antipode;
    int j;
  };
  std::vector<Event> ev;
  for (int j = 0; j < cfg.n; ++j) {
    ev.push_back({ang[static_cast<std::size_t>(j)], false, j});
    ev.push_back({wrap(ang[static_cast<std::size_t>(j)] + std::numbers::pi), true, j});
  }
  std::sort(ev.begin(), ev.end(), [](const Event& x, const Event& y) {
    return x.a != y.a ? x.a < y.a : x.j < y.j;
  });
  // rotate so the walk starts right after an antipode
  const auto first_anti = std::find_if(ev.begin(), ev.end(), [](const Event& e) { return e.antipode; });
  std::rotate(ev.begin(), first_anti + 1, ev.end());

  std::vector<std::vector<int>> classes;
  std::vector<int> current;
  for (const auto& e : ev) {
    if (e.antipode) {
      if (!current.empty()) classes.push_back(current);
      current.clear();
    } else {
      current.push_back(e.j);
    }
  }
  if (!current.empty()) classes.push_back(current);

  if (classes.size() < 3 || classes.size() % 2 == 0)
    throw StructuralError("configuration does not reduce to an odd polygon (got " +
                          std::to_string(classes.size()) + " classes)");
  std::size_t start = 0;
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (std::find(classes[c].begin(), classes[c].end(), 0) != classes[c].end()) start = c;
  CyclicWeights out;
  for (std::size_t c = 0; c < classes.size(); ++c)
    out.weights.push_back(static_cast<int>(classes[(start + c) % classes.size()].size()));
  return out;
}

std::string to_string(Equivalence e) {
  return e == Equivalence::rotation ? "rotation" : "dihedral";
}

namespace {

std::vector<int> canonical(const std::vector<int>& v, Equivalence eq) {
  std::vector<int> best = v;
  std::vector<int> cur = v;
  for (int pass = 0; pass < (eq == Equivalence::dihedral ? 2 : 1); ++pass) {
    for (std::size_t r = 0; r < cur.size(); ++r) {
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      best = std::min(best, cur);
    }
    std::reverse(cur.begin(), cur.end());
  }
  return best;
}

void compositions(int remaining, std::vector<int>& prefix, Equivalence eq,
                  std::set<std::vector<int>>& out) {
  if (remaining == 0) {
    if (prefix.size() >= 3 && prefix.size() % 2 == 1) out.insert(canonical(prefix, eq));
    return;
  }
  for (int part = 1; part <= remaining; ++part) {
    prefix.push_back(part);
    compositions(remaining - part, prefix, eq, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> enumerate_diffeo_types(int n, Equivalence eq) {
  if (n < 1) throw StructuralError("n must be positive");
  if (n > 22) throw StructuralError("n too large for exhaustive enumeration");
  std::set<std::vector<int>> reps;
  std::vector<int> prefix;
  compositions(n, prefix, eq, reps);
  return {reps.begin(), reps.end()};
}

std::int64_t count_diffeo_types(int n, Equivalence eq) {
  return static_cast<std::int64_t>(enumerate_diffeo_types(n, eq).size());
}

}  // namespace mam

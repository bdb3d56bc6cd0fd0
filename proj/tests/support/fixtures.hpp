#pragma once

#include "mam/config.hpp"
#include "mam/config_io.hpp"
#include "mam/random.hpp"

#include <numbers>
#include <string>

namespace fixtures {

using mam::cplx;

inline std::string config_path(const std::string& name) {
  return std::string(MAM_CONFIG_DIR) + "/" + name + ".json";
}

inline mam::Configuration load(const std::string& name) { return mam::load_config(config_path(name)); }

inline std::vector<cplx> pentagon_lambdas() {
  std::vector<cplx> v;
  for (int j = 0; j < 5; ++j) v.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / 5.0));
  return v;
}

inline mam::Configuration pentagon() { return mam::make_classical(pentagon_lambdas()); }

// lambda_j = (e^{i theta_j}, e^{2 i theta_j}, ...) on the regular n-gon.
inline std::vector<std::vector<cplx>> moment_curve(int m, int n) {
  std::vector<std::vector<cplx>> out;
  for (int j = 0; j < n; ++j) {
    std::vector<cplx> v;
    for (int k = 1; k <= m; ++k) v.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k * j / n));
    out.push_back(v);
  }
  return out;
}

inline mam::Configuration random_classical(int m, int n, std::uint64_t seed, std::uint64_t stream) {
  mam::Philox rng(seed, stream);
  std::vector<std::vector<cplx>> l;
  for (int j = 0; j < n; ++j) {
    std::vector<cplx> v;
    for (int k = 0; k < m; ++k) {
      const double a = rng.gaussian();
      const double b = rng.gaussian();
      v.push_back({a, b});
    }
    l.push_back(v);
  }
  return mam::make_classical(l);
}

inline mam::Vec random_vec(mam::Philox& rng, int n) {
  mam::Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
  return v;
}

}  // namespace fixtures

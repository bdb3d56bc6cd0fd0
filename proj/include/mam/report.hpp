#pragma once

#include "mam/actions.hpp"
#include "mam/config.hpp"
#include "mam/forms.hpp"
#include "mam/topology.hpp"
#include "mam/toric.hpp"
#include "mam/variety.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace mam {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct RunManifest {
  std::string command;
  std::string config_path;
  std::string config_hash;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  double rank_tol = kDefaultRankTol;
  double feas_tol = kDefaultFeasTol;
  std::string timestamp;
  std::string version = kToolkitVersion;
};

/// UTC time as YYYY-MM-DDTHH:MM:SSZ, taken from SOURCE_DATE_EPOCH when set.
std::string current_timestamp();

/// printf("%.17g").
std::string format_number(double x);

using ojson = nlohmann::ordered_json;

ojson to_json(const RunManifest& m);
ojson to_json(const AdmissibilityReport& r);
ojson to_json(const MixedAdmissibility& r);
ojson to_json(const VarietyPoint& p);
ojson to_json(const FormEvaluation& f);
ojson to_json(const RankTrichotomy& t);
ojson to_json(const DiffeoType& t);
ojson to_json(const PolytopeDescription& p);
ojson to_json(const FiberCount& f);
ojson complex_to_json(cplx c);
ojson vec_to_json(const Vec& v);

}  // namespace mam

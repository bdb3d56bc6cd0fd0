#include "mam/config_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace mam {

using nlohmann::json;

namespace {

double as_number(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  return v.get<double>();
}

int as_int(const json& v, const char* what) {
  if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return v.get<int>();
}

std::vector<double> as_weights(const json& v, const char* what) {
  if (!v.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(as_number(x, what));
  return out;
}

}  // namespace

Configuration config_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("configuration must be a JSON object");
  static const std::set<std::string> known{"m", "n", "kind", "s", "lambdas", "weights_a",
                                           "weights_b"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ParseError("unknown field '" + key + "'");
  for (const char* req : {"m", "n", "kind", "lambdas"})
    if (!j.contains(req)) throw ParseError(std::string("missing field '") + req + "'");

  Configuration cfg;
  cfg.m = as_int(j.at("m"), "m");
  cfg.n = as_int(j.at("n"), "n");
  if (!j.at("kind").is_string()) throw ParseError("kind must be a string");
  try {
    cfg.kind = kind_from_string(j.at("kind").get<std::string>());
  } catch (const StructuralError& e) {
    throw ParseError(e.what());
  }
  if (cfg.kind == Kind::mixed_m1) {
    if (!j.contains("s")) throw ParseError("mixed-m1 configurations require 's'");
    cfg.s = as_int(j.at("s"), "s");
  } else if (j.contains("s")) {
    throw ParseError("'s' is only meaningful for mixed-m1 configurations");
  }
  if (cfg.m < 1 || cfg.n < 1) throw ParseError("m and n must be positive");

  const json& lam = j.at("lambdas");
  if (!lam.is_array() || static_cast<int>(lam.size()) != cfg.n)
    throw ParseError("lambdas must be an array of n entries");
  cfg.lambdas = Mat(2 * cfg.m, cfg.n);
  for (int jj = 0; jj < cfg.n; ++jj) {
    const json& vec = lam[static_cast<std::size_t>(jj)];
    if (!vec.is_array() || static_cast<int>(vec.size()) != cfg.m)
      throw ParseError("each lambda must be an array of m [re, im] pairs");
    for (int k = 0; k < cfg.m; ++k) {
      const json& pair = vec[static_cast<std::size_t>(k)];
      if (!pair.is_array() || pair.size() != 2)
        throw ParseError("complex numbers are written as [re, im]");
      cfg.lambdas(2 * k, jj) = as_number(pair[0], "lambda component");
      cfg.lambdas(2 * k + 1, jj) = as_number(pair[1], "lambda component");
    }
  }
  if (j.contains("weights_b"))
    cfg.weights_b = as_weights(j.at("weights_b"), "weights_b");
  else
    cfg.weights_b.assign(static_cast<std::size_t>(cfg.n), 1.0);
  if (j.contains("weights_a"))
    cfg.weights_a = as_weights(j.at("weights_a"), "weights_a");
  else
    cfg.weights_a.assign(static_cast<std::size_t>(cfg.w_count()), 1.0);

  try {
    cfg.validate();
  } catch (const StructuralError& e) {
    throw ParseError(e.what());
  }
  return cfg;
}

Configuration parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(j);
}

Configuration load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open configuration file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

nlohmann::ordered_json config_to_json(const Configuration& cfg) {
  nlohmann::ordered_json j;
  j["m"] = cfg.m;
  j["n"] = cfg.n;
  j["kind"] = to_string(cfg.kind);
  if (cfg.kind == Kind::mixed_m1) j["s"] = cfg.s;
  nlohmann::ordered_json lam = nlohmann::ordered_json::array();
  for (int jj = 0; jj < cfg.n; ++jj) {
    nlohmann::ordered_json vec = nlohmann::ordered_json::array();
    for (int k = 0; k < cfg.m; ++k)
      vec.push_back({cfg.lambdas(2 * k, jj), cfg.lambdas(2 * k + 1, jj)});
    lam.push_back(vec);
  }
  j["lambdas"] = lam;
  j["weights_a"] = cfg.weights_a;
  j["weights_b"] = cfg.weights_b;
  return j;
}

std::string config_hash(const Configuration& cfg) {
  const std::string text = config_to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mam

#pragma once

#include "mam/config.hpp"

#include <json.hpp>

#include <string>

namespace mam {

/// Input file could not be parsed (bad JSON, wrong types, unknown fields).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration file schema (all keys lower-case; any other key is rejected):
///
///   {
///     "m": 2, "n": 5,
///     "kind": "classical" | "mixed-m1" | "mixed-general",
///     "s": 1,                                  // required iff kind = mixed-m1
///     "lambdas": [ [[re, im], ...m pairs], ...n entries ],
///     "weights_a": [...],                      // optional, one per w-coordinate
///     "weights_b": [...]                       // optional, n entries
///   }
///
/// Omitted weights default to 1. For classical configurations weights_a is
/// accepted but unused.
Configuration config_from_json(const nlohmann::json& j);
Configuration parse_config(const std::string& text);
Configuration load_config(const std::string& path);

nlohmann::ordered_json config_to_json(const Configuration& cfg);

/// FNV-1a 64-bit hash of the canonical JSON form, as 16 hex digits.
std::string config_hash(const Configuration& cfg);

}  // namespace mam

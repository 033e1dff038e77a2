#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "drincm/poly.hpp"

namespace dcm {

struct VerifyOptions {
  int max_deg = -1;  // degree bound of the delta grid; -1 picks a per-suite default
  int n = 12;        // Mertens range
  int points = 20;   // synthetic points per |z - u|
  std::uint64_t seed = 1;
  int threads = 1;
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::uint64_t checked = 0, failed = 0;
  nlohmann::ordered_json summary;
};

// Canonical suite names; `all` runs each in this order.
const std::vector<std::string>& suite_names();
// Accepts a canonical name or an alias; throws PreconditionViolated otherwise.
std::string canonical_suite(const std::string& name);

SuiteResult run_suite(const std::string& name, FieldRef f, const VerifyOptions& opt);

// Admissible (imaginary) delta of degree 1..max_deg, in encoding order.
std::vector<PolyA> admissible_deltas(FieldRef f, int max_deg, bool even_only = false);

nlohmann::ordered_json to_json(const SuiteResult& r);

}  // namespace dcm

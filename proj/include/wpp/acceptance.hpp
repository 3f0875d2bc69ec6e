#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "wpp/common.hpp"

namespace wpp {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = true;
  std::string detail;    // sizes covered, or the first failing witness
  double seconds = 0;
};

struct AcceptanceConfig {
  /// Upper bound on n for every criterion; 0 runs each criterion at its full size.
  int n = 0;
  std::uint64_t seed = 1;
  /// Straightening soundness at n = 5: all trees, or this many random trees when positive.
  int straighten_samples = 0;
  int jobs = 1;
  Caps caps;
};

/// Criteria 1..16 in order. Each criterion catches its own errors and reports them as failures.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg, const std::vector<int>& only = {});
CriterionResult run_criterion(int id, const AcceptanceConfig& cfg);
std::string criterion_name(int id);
nlohmann::json to_json(const CriterionResult& r);

}  // namespace wpp

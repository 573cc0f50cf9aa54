#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace sacks {

/// Bounds of the property suites. Defaults are the acceptance bounds.
struct VerifyBounds {
  std::uint64_t seed = 20240601;
  std::size_t depth = 2;    // skeleton depth of the exhaustive tree class
  std::size_t budget = 11;  // formula budget for the Imp levels
  std::size_t n_bound = 4;  // census heights per limit and SC bases
};

struct PropertyResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  double seconds = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> properties;

  bool passed() const;
};

/// codec, tree, conditions, degrees, imp.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws Input on an unknown name.
std::vector<SuiteReport> run_suites(const std::string& name, const VerifyBounds& bounds);

nlohmann::json report_json(const std::vector<SuiteReport>& reports, const VerifyBounds& bounds);

}  // namespace sacks

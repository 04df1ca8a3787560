#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "photon/params.hpp"

namespace photon {

// Result of one numbered validation criterion.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;  // one line per sub-check
  double elapsed_seconds = 0.0;
};

struct AcceptanceOptions {
  int jobs = 0;                      // 0 = available parallelism
  unsigned long long seed = 20260816ULL;
  std::vector<int> only;             // run only these ids (empty = all)
  // Optional informational spot check of a user-supplied parameter point;
  // never affects pass/fail.
  std::optional<ScaledParams> spot_check;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
};

// Run the numbered validation criteria.  on_result (may be null) is invoked
// after each criterion finishes, for streaming progress output.
AcceptanceReport run_acceptance(
    const AcceptanceOptions& opt,
    const std::function<void(const CriterionResult&)>& on_result = nullptr);

}  // namespace photon

#ifndef ORDLAB_SELFTEST_HPP
#define ORDLAB_SELFTEST_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ordlab {

struct CriterionResult {
  std::string name;
  bool pass = false;
  nlohmann::json details;  // deterministic counters only, no timing
  double seconds = 0;      // wall clock, never serialized into reports
};

// The property suite behind `ordlab selftest`.  `full` runs the trial
// counts the suite is specified at; the reduced scale keeps every
// property but shrinks the trial counts for a quick check.
std::vector<CriterionResult> run_criteria(bool full);

// Reduced-scale run packaged as a deterministic report payload.
nlohmann::json selftest_report();

}  // namespace ordlab

#endif

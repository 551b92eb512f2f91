#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mefkit/io.hpp"

namespace mefkit {

struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteCheck> checks;
  // Wall time of the run. Deliberately kept out of the JSON form so reports
  // stay byte-identical across runs.
  double seconds = 0.0;

  bool pass() const;
};

// Suite names in canonical order: betti, decomposition,
// monotone-equivalence, monotone-hull, irr-equicontinuity, mef, bounds,
// snf, determinism.
const std::vector<std::string>& selftest_suite_names();

// Runs one suite. The rng stream is forked from (seed, suite name), so a
// suite's data does not depend on which other suites ran.
SuiteResult run_selftest_suite(const std::string& name, std::uint64_t seed);

std::vector<SuiteResult> run_selftest(std::uint64_t seed);

Json suite_result_to_json(const SuiteResult& result);
Json selftest_report_json(const std::vector<SuiteResult>& results);

}  // namespace mefkit

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latsp/core.hpp"
#include "latsp/generator.hpp"
#include "latsp/io.hpp"

namespace latsp {

// Configuration shared by every property suite.
struct SuiteConfig {
  std::uint64_t seed = 1;
  int cases = 25;          // random instances per suite
  int max_domain = 5;      // largest random state space
  int max_lattice = 6;     // largest random truth-value lattice
  Exec exec = Exec::automatic;
  std::vector<std::string> only;  // empty = run everything
  bool inject_failure = false;    // plant one deliberate violation (quantale suite)
  std::string out_dir;            // where reproducer files go ("" = no files)
  int max_reproducers = 4;        // per suite
};

struct SuiteOutcome {
  std::string suite;
  LawReport report;
  std::vector<std::string> informational;      // notes that do not affect pass/fail
  std::vector<std::string> reproducer_files;   // written reproducer paths
  double seconds = 0.0;
};

// Names of all suites in execution order.
std::vector<std::string> suite_names();

// Run the selected suites; outcomes come back in suite_names() order.
std::vector<SuiteOutcome> run_suites(const SuiteConfig& cfg);

bool all_passed(const std::vector<SuiteOutcome>& outcomes);

// Re-check a previously written reproducer file.  Returns the fresh report for
// the single recorded instance (so a fixed bug shows up as a now-clean report).
LawReport rerun_reproducer(const std::string& path);

// One line per outcome: "suite: ok (checked N)" or failure summary.
std::string format_outcomes(const std::vector<SuiteOutcome>& outcomes, bool machine);

}  // namespace latsp

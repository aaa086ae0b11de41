// Verification suites shared by the CLI and the acceptance gate.  Each suite
// sweeps the configured grid, counts atomic checks, and reports pass/fail
// with first-failure diagnostics.  The jet suite is advisory: it measures an
// open problem and never affects exit codes.
#pragma once

#include <string>
#include <vector>

#include "mpd/report.hpp"

namespace mpd {

// Asserted suites, in canonical report order.
const std::vector<std::string>& asserted_suites();
// True for names run_suite accepts: the asserted set plus "jet" and "golden".
bool is_known_suite(const std::string& name);

// Runs one suite over the configured grid.  Throws ConfigError for unknown
// names; computational failures are captured in the result, not thrown.
// For "jet", the probes' reports are appended to *jet_out when given.
SuiteResult run_suite(const std::string& name, const RunConfig& cfg,
                      std::vector<FreenessReport>* jet_out = nullptr);

// Per-weight homology tables of the linearized complex for every grid point.
std::vector<HomologyTable> homology_tables(const RunConfig& cfg);

// Assembles the report for one CLI command: verify (selected suites),
// homology (tables only), explore-jet (advisory probes), report (all suites
// plus tables plus probes).  Throws ConfigError for unknown commands.
Report run_command(const std::string& command, const RunConfig& cfg);

// 0 when every asserted suite in the report passed, 1 otherwise.
int exit_code(const Report& report);

}  // namespace mpd

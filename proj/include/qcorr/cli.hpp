// cli.hpp - command-line entry point

#pragma once

#include "qcorr/config.hpp"
#include "qcorr/experiments.hpp"

#include <ostream>
#include <vector>

namespace qcorr {

/// Every audit applicable to the scenario: closed-vs-brute agreement,
/// sum-of-squares audits (when s1s2, s1r2, s2r1, r1r2 are all swept by brute
/// force) and, for the flat spectrum, the asymptotic audits.
std::vector<AuditOutcome> run_audits(const Scenario& scenario,
                                     std::span<const Partition> partitions, Pipeline pipeline,
                                     const SweepOptions& options, const AuditToggles& toggles);

/// Subcommands: sweep <config>, audit <config> | audit --builtin figN,
/// figures, oracle <config>. Exit codes: 0 success, 1 audit or runtime
/// failure, 2 configuration or usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcorr

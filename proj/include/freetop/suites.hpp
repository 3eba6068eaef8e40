#pragma once

#include "freetop/report.hpp"

namespace freetop {

/// Executes the selected verification suites deterministically under the
/// config seed and returns the canonical report. Suite names:
///   phi, certs, bk, sur, eq1, mainlemma, continuity, openness, determinism
/// plus "all". Group-specific suites run once per configured group.
Report run_suite(const RunConfig& config);

/// Exit code convention: nonzero iff the report contains a FAIL.
int report_exit_code(const Report& report);

}  // namespace freetop

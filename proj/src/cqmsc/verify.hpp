#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cqmsc/params.hpp"

namespace cqmsc {

// Cross-method identity suite. Every check pits at least two independent
// computational routes against each other (closed form vs quadrature,
// series vs special function, ODE vs analytic), so a defect anywhere in the
// chain shows up as a tolerance violation in at least one row.

enum class VerifyFault {
  none,
  disable_langer,  // negative control: drops the Langer correction from the
                   // periodic-orbit density, which must break the pole-sum
                   // comparison
};

struct VerifyOptions {
  CqmParams params{1.0, 1.0};
  bool quick = false;  // closed-form/quadrature subset, no ODE sweeps
  VerifyFault fault = VerifyFault::none;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct CheckResult {
  std::string name;
  std::string description;
  double measured;   // discrepancy metric for the check
  double tolerance;  // pass iff measured <= tolerance
  bool passed;
  double seconds;
  std::string detail;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opts);

bool all_passed(const std::vector<CheckResult>& results);

/// JSON report: one entry per identity with its measured discrepancy and
/// tolerance, plus the options echo.
std::string verify_report_json(const VerifyOptions& opts,
                               const std::vector<CheckResult>& results);

}  // namespace cqmsc

#pragma once

// Acceptance checks shared by `powex verify` and the acceptance test binary.

#include <cstdint>
#include <string>
#include <vector>

namespace powex {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
};

std::vector<CheckResult> run_acceptance();

/// One invocation per documented CLI verb except `verify`; used for the
/// byte-identical output check.
std::vector<std::vector<std::string>> documented_commands();

inline constexpr std::uint64_t kAcceptanceSeed = 20160607;

/// "[PASS] 3 hall_limit: measured=... bound=... (...)", optionally with timing.
std::string format_check_line(const CheckResult& check, bool with_timing);

/// Array of {check, status, measured, bound}.
std::string summary_json(const std::vector<CheckResult>& checks);

}  // namespace powex

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rct {

// Outcome of one named verification check. `measured` is the check's figure
// of merit (an error, a KS distance, a normalized statistic, a mismatch
// count); the check passes when measured <= threshold.
struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

// Registry order is the execution order of `verify` with no filter.
std::vector<std::string> verify_check_names();

// Run one named check with randomness derived from `seed`. Unknown names
// throw ConfigError. A check that throws internally is reported as failed
// with the exception text in `detail`.
CheckResult run_verify_check(const std::string& name, std::uint64_t seed);

}  // namespace rct

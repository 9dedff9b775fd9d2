#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rrbf {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Self-checks behind `rrbf validate`: detector/oracle equivalence, complexity
/// counts, EVCM orthogonality, numerics bounds and noiseless decoding.
std::vector<CheckResult> run_validation(std::uint64_t seed = 7);

/// Prints one line per check; returns true when all pass.
bool report_validation(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace rrbf

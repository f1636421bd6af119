#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lcint::app {

struct PropertyResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string first_failure;
  bool pass() const { return failures == 0 && instances > 0; }
};

// Randomised invariant checks shared by selftest, the acceptance binary and
// the unit tests. Deterministic for a given seed.
std::vector<PropertyResult> run_property_suite(std::uint64_t seed, int instances = 50);

}  // namespace lcint::app

#pragma once

#include "report.hpp"
#include "scenario.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lcint::app {

struct Overrides {
  std::optional<std::pair<int, int>> precision;  // N, M
  std::optional<int> refine_max;
  unsigned workers = 1;
  std::uint64_t seed = 1;
};

enum ExitCode { ok = 0, validation = 1, budget = 2, invariant = 3 };

Scenario apply(const Scenario& s, const Overrides& o);

// Runs the scenario's task. Errors propagate as lcint exceptions.
Report run_scenario(const Scenario& s, const std::string& name, const Overrides& o = {});

// ok, or budget when a probe had to give up on some ball
ExitCode exit_code_for(const Report& r);

// Entries of the [expect] block that the report does not reproduce.
std::vector<std::string> check_expectations(const Report& r);

}  // namespace lcint::app

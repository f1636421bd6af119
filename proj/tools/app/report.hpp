#pragma once

#include "scenario.hpp"

#include <string>
#include <utility>
#include <vector>

namespace lcint::app {

inline constexpr const char* tool_version = "lcint 0.1.0";

// Ordered key/value results plus the scenario echo. Both renderings carry
// the same content and nothing time- or machine-dependent.
struct Report {
  std::string name;
  Scenario scenario;
  std::vector<std::pair<std::string, std::string>> results;

  void add(std::string key, std::string value) { results.emplace_back(std::move(key), std::move(value)); }
  const std::string* find(const std::string& key) const;

  std::string text() const;
  std::string json() const;
};

}  // namespace lcint::app

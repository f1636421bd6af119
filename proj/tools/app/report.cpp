#include "report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace lcint::app {

const std::string* Report::find(const std::string& key) const {
  for (const auto& [k, v] : results)
    if (k == key) return &v;
  return nullptr;
}

std::string Report::text() const {
  std::ostringstream o;
  o << tool_version << "\n";
  o << "scenario: " << name << "\n";
  o << "task: " << to_string(scenario.task) << "\n\n";
  o << "== input ==\n" << serialize(scenario) << "\n== results ==\n";
  std::size_t w = 0;
  for (const auto& [k, v] : results) w = std::max(w, k.size());
  for (const auto& [k, v] : results) o << k << std::string(w - k.size() + 2, ' ') << v << "\n";
  return o.str();
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["tool"] = tool_version;
  j["scenario"] = name;
  j["task"] = to_string(scenario.task);
  j["input"] = serialize(scenario);
  auto& r = j["results"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : results) r[k] = v;
  return j.dump(2) + "\n";
}

}  // namespace lcint::app

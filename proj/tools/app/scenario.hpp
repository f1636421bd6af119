#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lcint::app {

enum class Task { intersect, probe, artin_rees, lattices };
std::string to_string(Task t);

struct RingSection {
  std::string kind = "padic";  // or "tadic"
  std::uint64_t p = 5;
  std::uint64_t q = 0;  // t-adic residue field order; 0 means p
  int N = 8;
  int M = 8;
  int d = 1;
  friend bool operator==(const RingSection&, const RingSection&) = default;
};

struct CycleSection {
  std::string label;
  std::vector<std::string> generators;  // canonical expression text
  friend bool operator==(const CycleSection&, const CycleSection&) = default;
};

struct ArtinReesSection {
  std::string f;
  int m_max = 0;
  std::optional<int> k_max;
  std::vector<std::string> transfer;  // divisors g to test with the constant of f
  std::optional<std::string> lift;    // h for lift_defining_equation
  int lift_m = 1;
  friend bool operator==(const ArtinReesSection&, const ArtinReesSection&) = default;
};

struct LatticeSection {
  std::uint64_t p = 3;
  int n = 1;
  int precision = 8;
  std::vector<std::vector<std::string>> gram, g;  // rational entries
  std::vector<std::string> u;
  int perturbations = 0;
  friend bool operator==(const LatticeSection&, const LatticeSection&) = default;
};

struct Scenario {
  Task task = Task::probe;
  std::string description;
  RingSection ring;
  int k = 1;
  std::vector<std::string> region{"*"};
  std::vector<CycleSection> cycles;
  std::vector<std::string> point;  // intersect: one integer per parameter
  int refine_max = 6;
  ArtinReesSection artin_rees;
  LatticeSection lattice;
  std::vector<std::pair<std::string, std::string>> expect;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Line-oriented "key = value" text with [sections]; see scenarios/README.md.
// Throws PreconditionError with the line number on malformed input.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string serialize(const Scenario& s);

}  // namespace lcint::app

#pragma once

// Named reductions and candidates, and the line-based scenario runner.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ogw/adversaries.hpp"
#include "ogw/harness.hpp"

namespace ogw {

std::vector<std::string> reduction_names();
Reduction reduction_by_name(const std::string& name);

std::vector<std::string> candidate_names();
Candidate candidate_by_name(const std::string& name);

std::vector<std::string> game_names();
AdversaryReport play_game(const std::string& game, const Candidate& c, std::size_t rounds,
                          std::size_t budget);
AdversaryReport play_game(const std::string& game, const MonotoneFunctional& phi,
                          const MonotoneFunctional& psi, std::size_t rounds, std::size_t budget);

// A functional answered by an external program: it is run as
// `command <label>` with the input digits on stdin, space separated, and
// must print its output digits.
MonotoneFunctional command_functional(const std::string& command, const std::string& label);

struct ScenarioStep {
  std::size_t line = 0;
  std::string op;
  std::vector<std::string> args;                // positional
  std::multimap<std::string, std::string> keys;  // key=value

  std::string get(const std::string& key, const std::string& fallback = {}) const;
  std::vector<std::string> all(const std::string& key) const;
  bool has(const std::string& key) const { return keys.count(key) != 0; }
};

struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultBudget;
  std::map<std::string, std::filesystem::path> inputs;
  std::vector<ScenarioStep> steps;
  std::filesystem::path base;  // directory for relative input paths
};

// Format:
//   name <text>
//   seed <n>
//   budget <n>
//   input <id> <path>
//   step <op> [positional ...] [key=value ...]   values may be "quoted"
// Ops:
//   tree <var> corpus=<label> | file=<input id>
//   group <var> tree=<var> | order=<n> | forest=<var>,<var>.. | lpo_star=<k> stream=.. | chi=<stream>
//   facts <group> count=<n>
//   epsilon <group> [expect=<0|1>]
//   embed <var> <group> [depth=<n>] [bound=<n>] [expect=path|none]
//   arch <group> [bound=<n>] [power=<n>] [expect=<count>]
//   forest <var>,<var>.. [expect=<bits>]
//   reduce <reduction> tree=<var> | group=<var> | k=<n> stream=.. | stream=..  [expect=<answer>]
//   sample lpo_star k=<n> count=<n>
//   falsify <game> candidate=<name> [rounds=<n>] [expect=found|exhausted]
//   verify <reduction>
Scenario parse_scenario(std::istream& in, const std::filesystem::path& base = {});
Scenario load_scenario(const std::filesystem::path& path);

struct ScenarioResult {
  std::string report;                                 // report.txt
  std::vector<std::pair<std::string, std::string>> artifacts;  // file name, contents
};

// Runs every step; throws AssertionFailure naming the first failing step.
ScenarioResult run_scenario(const Scenario& s);
// Writes report.txt and the artifacts into `out`.
void write_scenario_result(const ScenarioResult& r, const std::filesystem::path& out);

}  // namespace ogw

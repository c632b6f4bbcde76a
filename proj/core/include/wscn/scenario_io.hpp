#pragma once

#include "wscn/scenario.hpp"
#include "wscn/strategies.hpp"

#include <stdexcept>
#include <string>

namespace wscn {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line = 0;    // 0 when unknown
  int column = 0;
};

struct ScenarioFile {
  Scenario scenario;            // validated and normalized
  StrategyAssignment strategies;  // per-user; defaults to equilibrium
};

/// Parses a scenario document:
///
///   {"name": "...", "n": 3, "k_max": 2, "epsilon": "0.01", "seed": 42,
///    "costs": ["4", "6"],
///    "users": [{"pb": ["5", "4"], "jb": ["12", "9"],
///               "strategy": "equilibrium",
///               "stage1": [...], "stage2": [...]}, ...]}
///
/// Money values must be decimal strings ("4.50") or fractions ("13/3"),
/// parsed exactly; JSON numbers are rejected to keep binary floats out.
/// "jb" defaults to "pb", "strategy" to equilibrium; "stage1"/"stage2"
/// supply the bid vectors of fixed-strategy users. Throws ParseError on
/// malformed documents and ValidationError on invariant violations.
ScenarioFile parse_scenario_text(const std::string& text, const std::string& default_name);

ScenarioFile load_scenario_file(const std::string& path);

}  // namespace wscn

#pragma once

#include "wscn/mechanism.hpp"
#include "wscn/scenario.hpp"
#include "wscn/strategies.hpp"
#include "wscn/verifier.hpp"

#include <string>
#include <vector>

namespace wscn {

/// One mechanism run flattened for output. Totals are recomputed from the
/// per-user rows on demand, never cached.
struct RunReport {
  std::string scenario_name;
  bool terminated = false;
  int horizon = 0;
  std::vector<Money> winning_bid;
  std::vector<int> manufactured;  // 0-based feature indices
  CostSchedule costs;

  struct Row {
    int user = 0;  // 1-based
    std::string strategy;
    bool winner = false;
    int adopted = 0;
    PaymentBreakdown payment;
    Money utility;
  };
  std::vector<Row> rows;

  Money total_payment() const;
  Money manufactured_cost() const;
  Money residual() const { return total_payment() - manufactured_cost(); }
};

RunReport make_run_report(const Scenario& scenario, const StrategyAssignment& strategies,
                          const MechanismOutcome& outcome);

/// Human-readable table; money shown exactly with a decimal approximation.
std::string render_run_text(const RunReport& report);

/// RFC-4180 CSV, one row per user plus a TOTAL row. Exact money cells
/// round-trip through parse_money; *_approx columns carry decimals.
std::string render_run_csv(const RunReport& report);

struct SweepPoint {
  std::string param;
  Money value;
  RunReport report;
};

/// Sweep CSV: the run CSV columns prefixed with the swept parameter.
/// An empty sweep renders the header row only.
std::string render_sweep_csv(const std::vector<SweepPoint>& points);

/// Everything one `verify` invocation produced.
struct VerifyScenarioResult {
  std::string name;
  std::uint64_t seed = 0;
  AuditReport audit;
  std::vector<LemmaReport> lemmas;
  bool pass() const;
};

struct VerifyReport {
  Money grid_increment;
  std::string grid_cap = "auto";  // per-scenario when derived from the valuations
  int opponent_samples = 0;
  std::uint64_t seed = 0;
  std::vector<VerifyScenarioResult> results;
  bool pass() const;
};

/// Deterministic JSON rendering of a verification report; money values use
/// the same exact-string convention as scenario files. The header states
/// that all claims are grid-restricted.
std::string render_verify_json(const VerifyReport& report);

}  // namespace wscn

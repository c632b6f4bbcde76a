#include "wscn/report.hpp"

#include <json.hpp>

#include <sstream>

namespace wscn {

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

const char* kRunHeader =
    "user,strategy,winner,adopted,gamma,delta,alpha1,alpha2,alpha3,alpha4,"
    "net,net_approx,utility,utility_approx";

void append_run_rows(std::ostringstream& out, const RunReport& report,
                     const std::string& prefix) {
  for (const auto& row : report.rows) {
    const Money net = row.payment.net();
    out << prefix << row.user << "," << csv_escape(row.strategy) << ","
        << (row.winner ? "yes" : "no") << "," << row.adopted << ","
        << format_money(row.payment.gamma) << "," << format_money(row.payment.delta) << ","
        << format_money(row.payment.alpha1) << "," << format_money(row.payment.alpha2) << ","
        << format_money(row.payment.alpha3) << "," << format_money(row.payment.alpha4) << ","
        << format_money(net) << "," << format_decimal(net) << "," << format_money(row.utility)
        << "," << format_decimal(row.utility) << "\n";
  }
  out << prefix << "TOTAL,,," << report.manufactured.size() << ",,,,,,,"
      << format_money(report.total_payment()) << "," << format_decimal(report.total_payment())
      << "," << format_money(report.residual()) << "," << format_decimal(report.residual())
      << "\n";
}

}  // namespace

Money RunReport::total_payment() const {
  Money total = 0;
  for (const auto& row : rows) total += row.payment.net();
  return total;
}

Money RunReport::manufactured_cost() const {
  Money total = 0;
  for (int k : manufactured) total += costs[k];
  return total;
}

RunReport make_run_report(const Scenario& scenario, const StrategyAssignment& strategies,
                          const MechanismOutcome& outcome) {
  RunReport report;
  report.scenario_name = scenario.name;
  report.terminated = outcome.terminated();
  report.horizon = outcome.stage1.horizon;
  report.winning_bid = outcome.stage1.winning_bid;
  report.manufactured = outcome.manufactured;
  report.costs = scenario.costs;

  for (int i = 0; i < scenario.n; ++i) {
    RunReport::Row row;
    row.user = i + 1;
    row.strategy = i < static_cast<int>(strategies.size())
                       ? strategy_name(strategies[i].kind)
                       : "fixed";
    row.winner = outcome.stage1.is_winner(i);
    row.adopted = outcome.adopted_count[i];
    row.payment = outcome.payments[i];
    row.utility = outcome.utilities[i];
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string render_run_text(const RunReport& report) {
  std::ostringstream out;
  out << "scenario: " << report.scenario_name << "\n";
  if (report.terminated) {
    out << "stage 1: terminated (no opening bid beats the first feature's cost)\n";
    out << "manufactured: none, payments: none\n";
    return out.str();
  }

  out << "stage 1: " << report.horizon << " feature(s) survive; winning bids";
  for (const auto& bid : report.winning_bid) out << " " << format_money(bid);
  out << "\nmanufactured:";
  for (int k : report.manufactured) out << " " << k + 1;
  if (report.manufactured.empty()) out << " none";
  out << "\n\n";

  out << "user  strategy     winner  adopted  net payment          utility\n";
  for (const auto& row : report.rows) {
    const Money net = row.payment.net();
    std::ostringstream pay, util;
    pay << format_money(net) << " (~" << format_decimal(net, 4) << ")";
    util << format_money(row.utility) << " (~" << format_decimal(row.utility, 4) << ")";
    out << "  " << row.user << "   " << row.strategy;
    for (std::size_t pad = row.strategy.size(); pad < 11; ++pad) out << ' ';
    out << "  " << (row.winner ? "yes" : "no ") << "     " << row.adopted << "        ";
    out << pay.str();
    for (std::size_t pad = pay.str().size(); pad < 19; ++pad) out << ' ';
    out << "  " << util.str() << "\n";
  }

  out << "\ntotal payments: " << format_money(report.total_payment())
      << ", manufactured cost: " << format_money(report.manufactured_cost())
      << ", residual: " << format_money(report.residual()) << "\n";
  return out.str();
}

std::string render_run_csv(const RunReport& report) {
  std::ostringstream out;
  out << kRunHeader << "\n";
  append_run_rows(out, report, "");
  return out.str();
}

std::string render_sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out << "param,value," << kRunHeader << "\n";
  for (const auto& point : points) {
    append_run_rows(out, point.report,
                    csv_escape(point.param) + "," + format_money(point.value) + ",");
  }
  return out.str();
}

namespace {

using nlohmann::json;

json lemma_to_json(const LemmaReport& lemma) {
  json violations = json::array();
  for (const auto& v : lemma.violations) {
    violations.push_back({{"user", v.user}, {"sample", v.sample}, {"detail", v.detail}});
  }
  json observations = json::array();
  for (const auto& v : lemma.floor_observations) {
    observations.push_back({{"user", v.user}, {"sample", v.sample}, {"detail", v.detail}});
  }
  json out = {
      {"lemma", lemma.lemma},
      {"vacuous", lemma.vacuous},
      {"users_checked", lemma.users_checked},
      {"comparisons", lemma.comparisons},
      {"clamped_comparisons", lemma.clamped_comparisons},
      {"outcome_ties", lemma.outcome_ties},
      {"violation_count", lemma.violation_count},
      {"floor_miss_count", lemma.floor_miss_count},
      {"violations", violations},
      {"floor_observations", observations},
      {"pass", lemma.pass()},
  };
  if (!lemma.note.empty()) out["note"] = lemma.note;
  return out;
}

json audit_to_json(const AuditReport& audit) {
  return {
      {"terminated", audit.terminated},
      {"budget_residual", format_money(audit.budget_residual)},
      {"ir_violations", audit.ir_violations},
      {"efficiency_ok", audit.efficiency_ok},
      {"manufactured", audit.manufactured_count},
      {"feasible_horizon", audit.feasible},
      {"counterexamples", audit.counterexamples},
      {"pass", audit.pass()},
  };
}

}  // namespace

bool VerifyScenarioResult::pass() const {
  if (!audit.pass()) return false;
  for (const auto& lemma : lemmas) {
    if (!lemma.pass()) return false;
  }
  return true;
}

bool VerifyReport::pass() const {
  for (const auto& result : results) {
    if (!result.pass()) return false;
  }
  return true;
}

std::string render_verify_json(const VerifyReport& report) {
  json results = json::array();
  for (const auto& result : report.results) {
    json lemmas = json::array();
    for (const auto& lemma : result.lemmas) lemmas.push_back(lemma_to_json(lemma));
    results.push_back({
        {"name", result.name},
        {"seed", result.seed},
        {"audit", audit_to_json(result.audit)},
        {"lemmas", lemmas},
        {"pass", result.pass()},
    });
  }

  json doc = {
      {"scope", "grid-restricted verification; continuous-bid claims are not covered"},
      {"grid", {{"increment", format_money(report.grid_increment)},
                {"cap", report.grid_cap},
                {"opponent_samples", report.opponent_samples}}},
      {"seed", report.seed},
      {"scenarios", results},
      {"pass", report.pass()},
  };
  return doc.dump(2) + "\n";
}

}  // namespace wscn

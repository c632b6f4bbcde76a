// wscn-auction: runs the two-stage feature auction on scenario files,
// verifies the equilibrium properties on desk-scale instances, and sweeps
// scenario parameters into CSV.

#include <CLI11.hpp>

#include "wscn/cost_sharing.hpp"
#include "wscn/mechanism.hpp"
#include "wscn/report.hpp"
#include "wscn/scenario_io.hpp"
#include "wscn/strategies.hpp"
#include "wscn/verifier.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInputError = 2;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

wscn::StrategyAssignment apply_overrides(wscn::StrategyAssignment assignment,
                                         const std::vector<std::string>& overrides,
                                         int n) {
  if (overrides.empty()) return assignment;
  std::vector<std::string> names = overrides;
  if (names.size() == 1 && n > 1) names.assign(n, names[0]);
  if (static_cast<int>(names.size()) != n) {
    throw std::invalid_argument("--strategies needs one name or one per user (" +
                                std::to_string(n) + ")");
  }
  for (int i = 0; i < n; ++i) {
    const auto kind = wscn::parse_strategy_kind(names[i]);
    if (kind == wscn::StrategyKind::Fixed && assignment[i].fixed_stage1.empty()) {
      throw std::invalid_argument("user " + std::to_string(i + 1) +
                                  " has no fixed bids in the scenario file");
    }
    assignment[i].kind = kind;
  }
  return assignment;
}

wscn::RunReport run_scenario(const wscn::Scenario& scenario,
                             const wscn::StrategyAssignment& strategies) {
  const wscn::StageOneBids stage1_bids = wscn::build_stage1_bids(strategies, scenario);
  const wscn::StageOneOutcome stage1 = wscn::run_stage_one(stage1_bids, scenario.costs);
  const wscn::StageTwoBids stage2_bids = wscn::build_stage2_bids(strategies, scenario, stage1);
  const wscn::MechanismOutcome outcome =
      wscn::run_mechanism(scenario, stage1_bids, stage2_bids);
  return wscn::make_run_report(scenario, strategies, outcome);
}

wscn::Money default_cap(const wscn::Scenario& scenario, const wscn::Money& increment) {
  wscn::Money top = 0;
  for (const auto& schedule : scenario.true_valuations) {
    for (const auto& v : schedule) top = std::max(top, v);
  }
  // Round up to the grid so the cap itself is reachable.
  wscn::Money steps = top / increment;
  auto whole = numerator(steps) / denominator(steps);
  wscn::Money cap = increment * wscn::Money(whole);
  if (cap < top) cap += increment;
  return cap;
}

struct VerifyOptions {
  std::string eps = "1";
  std::string cap;  // empty: derive from the scenario
  int samples = 50;
  long long budget = 100000;
};

wscn::VerifyScenarioResult verify_one(const wscn::Scenario& scenario,
                                      const VerifyOptions& options) {
  wscn::VerifyScenarioResult result;
  result.name = scenario.name;
  result.seed = scenario.seed;
  result.audit = wscn::audit_equilibrium(scenario);

  wscn::BidGrid grid;
  grid.increment = wscn::parse_money(options.eps);
  grid.cap = options.cap.empty() ? default_cap(scenario, grid.increment)
                                 : wscn::parse_money(options.cap);
  grid.budget = options.budget;

  wscn::LemmaCheckConfig config;
  config.opponent_samples = options.samples;
  config.seed = scenario.seed;

  // Lemmas 1 and 3 run against the canonical stage-1 outcome; lemma 2
  // needs split winners, so it runs on the users' own stage-1 estimates.
  const wscn::BidProfile canonical = wscn::build_equilibrium_profile(scenario);
  const wscn::StageOneOutcome canonical_stage1 =
      wscn::run_stage_one(canonical.stage1, scenario.costs);
  result.lemmas.push_back(wscn::check_lemma1(scenario, canonical_stage1, grid, config));

  wscn::StageOneBids estimate_bids = scenario.joint_estimates;
  const wscn::StageOneOutcome estimate_stage1 =
      wscn::run_stage_one(estimate_bids, scenario.costs);
  result.lemmas.push_back(wscn::check_lemma2(scenario, estimate_stage1, grid, config));

  result.lemmas.push_back(wscn::check_lemma3(scenario, grid));
  return result;
}

int cmd_run(const std::string& path, const std::vector<std::string>& strategy_overrides,
            const std::string& csv_path) {
  wscn::ScenarioFile file = wscn::load_scenario_file(path);
  const wscn::StrategyAssignment strategies =
      apply_overrides(file.strategies, strategy_overrides, file.scenario.n);
  const wscn::RunReport report = run_scenario(file.scenario, strategies);
  std::cout << wscn::render_run_text(report);
  if (!csv_path.empty()) write_file(csv_path, wscn::render_run_csv(report));
  return kExitOk;
}

int cmd_verify(const std::optional<std::string>& path, const std::vector<long long>& random_args,
               const VerifyOptions& options) {
  wscn::VerifyReport report;
  report.opponent_samples = options.samples;
  report.grid_increment = wscn::parse_money(options.eps);
  if (!options.cap.empty()) report.grid_cap = options.cap;

  std::vector<wscn::Scenario> scenarios;
  if (path) {
    scenarios.push_back(wscn::load_scenario_file(*path).scenario);
    report.seed = scenarios.back().seed;
  } else {
    if (random_args.size() != 4) {
      throw std::invalid_argument("--random needs N K SEED COUNT");
    }
    wscn::RandomScenarioSpec spec;
    spec.n_max = static_cast<int>(random_args[0]);
    spec.k_max = static_cast<int>(random_args[1]);
    const auto seed = static_cast<std::uint64_t>(random_args[2]);
    const auto count = static_cast<int>(random_args[3]);
    if (spec.n_max < 2 || spec.k_max < 1 || count < 1) {
      throw std::invalid_argument("--random needs N >= 2, K >= 1, COUNT >= 1");
    }
    report.seed = seed;
    for (int i = 0; i < count; ++i) {
      scenarios.push_back(wscn::random_scenario(spec, seed + static_cast<std::uint64_t>(i)));
    }
  }

  for (const auto& scenario : scenarios) {
    report.results.push_back(verify_one(scenario, options));
  }
  std::cout << wscn::render_verify_json(report);
  return report.pass() ? kExitOk : kExitVerificationFailed;
}

int cmd_sweep(const std::string& path, const std::string& param, const std::string& from,
              const std::string& to, const std::string& step, const std::string& csv_path) {
  if (param != "cost_scale" && param != "n") {
    throw std::invalid_argument("unknown sweep parameter '" + param +
                                "' (supported: cost_scale, n)");
  }
  const wscn::ScenarioFile file = wscn::load_scenario_file(path);
  const wscn::Money lo = wscn::parse_money(from);
  const wscn::Money hi = wscn::parse_money(to);
  const wscn::Money stride = wscn::parse_money(step);
  if (stride <= 0) throw std::invalid_argument("--step must be positive");

  std::vector<wscn::SweepPoint> points;
  for (wscn::Money value = lo; value <= hi; value += stride) {
    wscn::Scenario scenario = file.scenario;
    wscn::StrategyAssignment strategies = file.strategies;
    if (param == "cost_scale") {
      for (auto& c : scenario.costs) c *= value;
    } else {
      if (denominator(value) != 1 || value < 2) {
        throw std::invalid_argument("sweep over n needs integer values >= 2");
      }
      const int target = static_cast<int>(numerator(value));
      // Repeat the user list cyclically to grow, truncate to shrink.
      while (scenario.n < target) {
        const int copy_from = scenario.n % static_cast<int>(file.scenario.n);
        scenario.true_valuations.push_back(file.scenario.true_valuations[copy_from]);
        scenario.joint_estimates.push_back(file.scenario.joint_estimates[copy_from]);
        strategies.push_back(file.strategies[copy_from]);
        ++scenario.n;
      }
      if (scenario.n > target) {
        scenario.n = target;
        scenario.true_valuations.resize(target);
        scenario.joint_estimates.resize(target);
        strategies.resize(target);
      }
    }
    scenario = wscn::validate_scenario(scenario);
    points.push_back({param, value, run_scenario(scenario, strategies)});
  }

  const std::string csv = wscn::render_sweep_csv(points);
  if (csv_path.empty()) {
    std::cout << csv;
  } else {
    write_file(csv_path, csv);
    std::cout << "wrote " << points.size() << " sweep point(s) to " << csv_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-stage feature auction: runs, equilibrium audits, parameter sweeps"};
  app.require_subcommand(1);

  std::string run_path;
  std::vector<std::string> run_strategies;
  std::string run_csv;
  auto* run = app.add_subcommand("run", "run one scenario and report payments");
  run->add_option("file", run_path, "scenario JSON file")->required();
  run->add_option("--strategies", run_strategies,
                  "per-user strategy names (one value applies to all)")
      ->delimiter(',');
  run->add_option("--csv", run_csv, "also write the report as CSV");

  std::optional<std::string> verify_path;
  std::vector<long long> verify_random;
  VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "audit equilibrium properties and lemma checks");
  auto* verify_file = verify->add_option("file", verify_path, "scenario JSON file");
  verify->add_option("--random", verify_random, "N K SEED COUNT: audit COUNT random scenarios")
      ->expected(4)
      ->excludes(verify_file);
  verify->add_option("--eps", verify_options.eps, "bid grid increment (default 1)");
  verify->add_option("--cap", verify_options.cap,
                     "bid grid cap (default: the scenario's largest valuation)");
  verify->add_option("--samples", verify_options.samples,
                     "sampled opponent profiles per check (default 50)");
  verify->add_option("--budget", verify_options.budget,
                     "most grid schedules a search may enumerate");

  std::string sweep_path, sweep_param, sweep_from, sweep_to, sweep_step, sweep_csv;
  auto* sweep = app.add_subcommand("sweep", "run a scenario across a parameter range");
  sweep->add_option("file", sweep_path, "scenario JSON file")->required();
  sweep->add_option("--param", sweep_param, "cost_scale or n")->required();
  sweep->add_option("--from", sweep_from, "first value")->required();
  sweep->add_option("--to", sweep_to, "last value (inclusive)")->required();
  sweep->add_option("--step", sweep_step, "stride")->required();
  sweep->add_option("--csv", sweep_csv, "write CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_path, run_strategies, run_csv);
    if (verify->parsed()) {
      if (!verify_path && verify_random.empty()) {
        throw std::invalid_argument("verify needs a scenario file or --random N K SEED COUNT");
      }
      return cmd_verify(verify_path, verify_random, verify_options);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_path, sweep_param, sweep_from, sweep_to, sweep_step, sweep_csv);
    }
  } catch (const wscn::GridBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const wscn::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const wscn::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}

#include "wscn/verifier.hpp"

#include "wscn/cost_sharing.hpp"
#include "wscn/strategies.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

namespace wscn {

namespace {

constexpr int kMaxStoredViolations = 10;

std::string render_schedule(const ValuationSchedule& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += format_money(values[i]);
  }
  return out + ")";
}

int grid_steps(const BidGrid& grid) {
  // floor(cap / increment)
  Money ratio = grid.cap / grid.increment;
  const auto steps = numerator(ratio) / denominator(ratio);
  return static_cast<int>(steps);
}

void append_capped(std::vector<LemmaViolation>& sink, LemmaViolation violation) {
  if (static_cast<int>(sink.size()) < kMaxStoredViolations) {
    sink.push_back(std::move(violation));
  }
}

}  // namespace

GridBudgetExceeded::GridBudgetExceeded(long long required_points, long long allowed_points)
    : std::runtime_error("bid grid needs " + std::to_string(required_points) +
                         " schedules but the budget allows " + std::to_string(allowed_points) +
                         "; raise the increment or lower the cap"),
      required(required_points),
      allowed(allowed_points) {}

long long grid_point_count(const BidGrid& grid) {
  // Non-increasing schedules of length d over {0..m} number C(m + d, d).
  const int m = grid_steps(grid);
  const int d = grid.dimensions;
  auto count = numerator(Money(1));  // arbitrary-precision integer
  for (int i = 1; i <= d; ++i) {
    count = count * (m + i) / i;
    if (count > std::numeric_limits<long long>::max()) {
      return std::numeric_limits<long long>::max();
    }
  }
  return static_cast<long long>(count);
}

std::vector<ValuationSchedule> enumerate_schedules(const BidGrid& grid) {
  const long long required = grid_point_count(grid);
  if (required > grid.budget) throw GridBudgetExceeded(required, grid.budget);

  const int m = grid_steps(grid);
  std::vector<ValuationSchedule> schedules;
  schedules.reserve(static_cast<std::size_t>(required));

  ValuationSchedule current(grid.dimensions, Money(0));
  // Depth-first over step counts, each entry bounded by its predecessor.
  auto recurse = [&](auto&& self, int position, int bound) -> void {
    if (position == grid.dimensions) {
      schedules.push_back(current);
      return;
    }
    for (int steps = 0; steps <= bound; ++steps) {
      current[position] = grid.increment * steps;
      self(self, position + 1, steps);
    }
  };
  recurse(recurse, 0, m);
  return schedules;
}

BestResponse best_response_stage2(int user, const Scenario& scenario,
                                  const StageTwoBids& fixed_others,
                                  const StageOneOutcome& stage1, const BidGrid& grid) {
  BidGrid search = grid;
  search.dimensions = stage1.horizon;
  const std::vector<ValuationSchedule> candidates = enumerate_schedules(search);

  BestResponse best;
  // The user's own valuations sticking out of the grid means the search
  // covers only bids up to the cap; flag the result as truncated.
  for (int k = 0; k < stage1.horizon; ++k) {
    if (scenario.true_valuations[user][k] > grid.cap) best.cap_truncated = true;
  }

  StageTwoBids bids = fixed_others;
  bool first = true;
  for (const ValuationSchedule& candidate : candidates) {
    bids[user] = candidate;
    const UserEvaluation eval = evaluate_stage2_user(user, scenario, bids, stage1);
    if (first || eval.utility > best.utility) {  // strict keeps the lexicographic least
      best.utility = eval.utility;
      best.bid = candidate;
      first = false;
    }
  }
  return best;
}

namespace {

struct ComparisonStats {
  LemmaReport* report;

  // Compares a candidate evaluation against the asserted optimum and files
  // the result. Returns true when the comparison involved a lifted summand.
  bool file(const UserEvaluation& optimum, const ValuationSchedule& optimum_bid,
            const UserEvaluation& candidate, const ValuationSchedule& candidate_bid,
            int user, int sample) {
    const bool floored = optimum.payment.clamped || candidate.payment.clamped;
    if (candidate.utility > optimum.utility) {
      std::ostringstream detail;
      detail << "bid " << render_schedule(candidate_bid) << " earns "
             << format_money(candidate.utility) << " > " << format_money(optimum.utility)
             << " of " << render_schedule(optimum_bid);
      if (floored) {
        ++report->floor_miss_count;
        append_capped(report->floor_observations, {user + 1, sample, detail.str()});
      } else {
        ++report->violation_count;
        append_capped(report->violations, {user + 1, sample, detail.str()});
      }
    } else if (candidate.utility == optimum.utility && candidate_bid != optimum_bid &&
               (candidate.adopted != optimum.adopted ||
                candidate.payment.net() != optimum.payment.net())) {
      ++report->outcome_ties;
    }
    return floored;
  }
};

StageTwoBids canonical_stage2(const Scenario& scenario, const StageOneOutcome& stage1) {
  StageTwoBids bids(scenario.n);
  for (int i = 0; i < scenario.n; ++i) {
    if (stage1.is_winner(i)) {
      bids[i] = lemma3_stage2(i, stage1.won_features(i), stage1.winning_bid, scenario,
                              stage1.horizon);
    } else {
      bids[i] = truthful_stage2(i, scenario, stage1.horizon);
    }
  }
  return bids;
}

}  // namespace

LemmaReport check_lemma1(const Scenario& scenario, const StageOneOutcome& stage1,
                         const BidGrid& grid, const LemmaCheckConfig& config) {
  LemmaReport report;
  report.lemma = "lemma1";

  std::vector<int> nonwinners;
  for (int i = 0; i < scenario.n; ++i) {
    if (!stage1.terminated && !stage1.is_winner(i)) nonwinners.push_back(i);
  }
  if (stage1.terminated || nonwinners.empty()) {
    report.vacuous = true;
    report.note = stage1.terminated ? "stage 1 terminated" : "every user won a bid";
    return report;
  }
  report.users_checked = static_cast<int>(nonwinners.size());

  BidGrid search = grid;
  search.dimensions = stage1.horizon;
  const std::vector<ValuationSchedule> candidates = enumerate_schedules(search);

  // Profile 0 is the canonical reply profile; the rest are random draws.
  std::vector<StageTwoBids> profiles;
  profiles.push_back(canonical_stage2(scenario, stage1));
  std::mt19937_64 rng(config.seed);
  for (int s = 0; s < config.opponent_samples; ++s) {
    StageTwoBids profile(scenario.n);
    for (int i = 0; i < scenario.n; ++i) {
      profile[i] = candidates[rng() % candidates.size()];
    }
    profiles.push_back(std::move(profile));
  }

  ComparisonStats stats{&report};
  for (int user : nonwinners) {
    const ValuationSchedule truthful = truthful_stage2(user, scenario, stage1.horizon);
    for (int sample = 0; sample < static_cast<int>(profiles.size()); ++sample) {
      StageTwoBids bids = profiles[sample];
      bids[user] = truthful;
      const UserEvaluation truthful_eval = evaluate_stage2_user(user, scenario, bids, stage1);

      bool floored = truthful_eval.payment.clamped;
      for (const ValuationSchedule& candidate : candidates) {
        bids[user] = candidate;
        const UserEvaluation eval = evaluate_stage2_user(user, scenario, bids, stage1);
        floored |= stats.file(truthful_eval, truthful, eval, candidate, user, sample);
      }
      ++report.comparisons;
      if (floored) ++report.clamped_comparisons;
    }
  }
  return report;
}

LemmaReport check_lemma2(const Scenario& scenario, const StageOneOutcome& stage1,
                         const BidGrid& grid, const LemmaCheckConfig& config) {
  LemmaReport report;
  report.lemma = "lemma2";

  std::vector<int> winners;
  for (int i = 0; i < scenario.n; ++i) {
    if (!stage1.terminated && stage1.is_winner(i) &&
        static_cast<int>(stage1.won_features(i).size()) < stage1.horizon) {
      winners.push_back(i);
    }
  }
  if (winners.empty()) {
    report.vacuous = true;
    report.note = stage1.terminated ? "stage 1 terminated"
                                    : "no winner holds a non-winning feature";
    return report;
  }
  report.users_checked = static_cast<int>(winners.size());

  BidGrid search = grid;
  search.dimensions = stage1.horizon;
  const std::vector<ValuationSchedule> candidates = enumerate_schedules(search);
  const StageTwoBids canonical = canonical_stage2(scenario, stage1);
  std::mt19937_64 rng(config.seed);

  ComparisonStats stats{&report};
  for (int user : winners) {
    const std::vector<int> won = stage1.won_features(user);

    for (int sample = 0; sample <= config.opponent_samples; ++sample) {
      // Fix the winning-feature report, truthful everywhere else.
      StageTwoBids others;
      ValuationSchedule winning_part;
      ValuationSchedule truthful_variant;
      bool found = false;
      for (int attempt = 0; attempt < 32 && !found; ++attempt) {
        if (sample == 0 && attempt == 0) {
          others = canonical;
          winning_part = canonical[user];
        } else {
          others.assign(scenario.n, {});
          for (int i = 0; i < scenario.n; ++i) {
            others[i] = candidates[rng() % candidates.size()];
          }
          winning_part = candidates[rng() % candidates.size()];
        }
        truthful_variant = truthful_stage2(user, scenario, stage1.horizon);
        for (int k : won) truthful_variant[k] = winning_part[k];
        found = is_non_increasing(truthful_variant);
      }
      if (!found) continue;  // no valid truthful merge for this draw

      StageTwoBids bids = others;
      bids[user] = truthful_variant;
      const UserEvaluation truthful_eval = evaluate_stage2_user(user, scenario, bids, stage1);

      bool floored = truthful_eval.payment.clamped;
      for (const ValuationSchedule& candidate : candidates) {
        bool matches = true;
        for (int k : won) matches &= candidate[k] == winning_part[k];
        if (!matches) continue;
        bids[user] = candidate;
        const UserEvaluation eval = evaluate_stage2_user(user, scenario, bids, stage1);
        floored |= stats.file(truthful_eval, truthful_variant, eval, candidate, user, sample);
      }
      ++report.comparisons;
      if (floored) ++report.clamped_comparisons;
    }
  }
  return report;
}

LemmaReport check_lemma3(const Scenario& scenario, const BidGrid& grid) {
  LemmaReport report;
  report.lemma = "lemma3";

  const BidProfile profile = build_equilibrium_profile(scenario);
  const StageOneOutcome stage1 = run_stage_one(profile.stage1, scenario.costs);
  if (stage1.terminated) {
    report.vacuous = true;
    report.note = "stage 1 terminated";
    return report;
  }

  BidGrid search = grid;
  search.dimensions = stage1.horizon;
  const std::vector<ValuationSchedule> candidates = enumerate_schedules(search);

  ComparisonStats stats{&report};
  for (int user = 0; user < scenario.n; ++user) {
    if (!stage1.is_winner(user)) continue;
    ++report.users_checked;

    const ValuationSchedule reply = lemma3_stage2(user, stage1.won_features(user),
                                                  stage1.winning_bid, scenario, stage1.horizon);
    StageTwoBids bids = profile.stage2;
    bids[user] = reply;
    const UserEvaluation reply_eval = evaluate_stage2_user(user, scenario, bids, stage1);

    bool floored = reply_eval.payment.clamped;
    for (const ValuationSchedule& candidate : candidates) {
      bids[user] = candidate;
      const UserEvaluation eval = evaluate_stage2_user(user, scenario, bids, stage1);
      floored |= stats.file(reply_eval, reply, eval, candidate, user, 0);
    }
    ++report.comparisons;
    if (floored) ++report.clamped_comparisons;
  }
  return report;
}

AuditReport audit_equilibrium(const Scenario& scenario) {
  AuditReport audit;
  audit.scenario_name = scenario.name;
  audit.seed = scenario.seed;
  audit.feasible = feasible_horizon(scenario);

  const BidProfile profile = build_equilibrium_profile(scenario);
  const MechanismOutcome outcome = run_mechanism(scenario, profile.stage1, profile.stage2);

  audit.terminated = outcome.terminated();
  audit.manufactured_count = static_cast<int>(outcome.manufactured.size());
  audit.efficiency_ok = audit.manufactured_count == audit.feasible;

  Money manufactured_cost = 0;
  for (int k : outcome.manufactured) manufactured_cost += scenario.costs[k];
  audit.budget_residual = outcome.total_payment() - manufactured_cost;

  for (int i = 0; i < scenario.n; ++i) {
    if (outcome.utilities[i] < 0) audit.ir_violations.push_back(i + 1);
  }

  if (!audit.pass()) {
    std::ostringstream detail;
    detail << "equilibrium profile: stage1";
    for (const auto& row : profile.stage1) detail << " " << render_schedule(row);
    detail << " stage2";
    for (const auto& row : profile.stage2) detail << " " << render_schedule(row);
    if (audit.budget_residual != 0) {
      audit.counterexamples.push_back(
          "budget residual " + format_money(audit.budget_residual) + " under " + detail.str());
    }
    if (!audit.ir_violations.empty()) {
      audit.counterexamples.push_back("negative utility under " + detail.str());
    }
    if (!audit.efficiency_ok) {
      audit.counterexamples.push_back(
          "manufactured " + std::to_string(audit.manufactured_count) + " features, expected " +
          std::to_string(audit.feasible) + " under " + detail.str());
    }
  }
  return audit;
}

Scenario random_scenario(const RandomScenarioSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  for (int attempt = 0; attempt < 1000; ++attempt) {
    Scenario scenario;
    scenario.name = "random-" + std::to_string(seed);
    scenario.seed = seed;
    scenario.n = draw(spec.n_min, spec.n_max);
    scenario.k_max = draw(spec.k_min, spec.k_max);
    scenario.bid_increment = 1;

    for (int i = 0; i < scenario.n; ++i) {
      ValuationSchedule pb(scenario.k_max);
      ValuationSchedule jb(scenario.k_max);
      for (auto& v : pb) v = draw(0, spec.value_cap);
      for (auto& v : jb) v = draw(0, spec.value_cap);
      std::sort(pb.rbegin(), pb.rend());
      std::sort(jb.rbegin(), jb.rend());
      scenario.true_valuations.push_back(std::move(pb));
      scenario.joint_estimates.push_back(std::move(jb));
    }
    scenario.costs.resize(scenario.k_max);
    for (auto& c : scenario.costs) c = draw(0, spec.cost_cap);
    std::sort(scenario.costs.begin(), scenario.costs.end());

    scenario = validate_scenario(scenario);
    if (!spec.require_feasible || feasible_horizon(scenario) >= 1) return scenario;
  }
  throw std::runtime_error("no feasible scenario found for seed " + std::to_string(seed));
}

}  // namespace wscn

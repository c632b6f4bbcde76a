#include "wscn/strategies.hpp"

#include <algorithm>
#include <stdexcept>

namespace wscn {

StrategyKind parse_strategy_kind(const std::string& name) {
  if (name == "truthful") return StrategyKind::Truthful;
  if (name == "equilibrium") return StrategyKind::Equilibrium;
  if (name == "fixed") return StrategyKind::Fixed;
  throw std::invalid_argument("unknown strategy '" + name +
                              "' (expected truthful, equilibrium or fixed)");
}

std::string strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Truthful: return "truthful";
    case StrategyKind::Equilibrium: return "equilibrium";
    case StrategyKind::Fixed: return "fixed";
  }
  return "?";
}

ValuationSchedule truthful_stage2(int user, const Scenario& scenario, int horizon) {
  const ValuationSchedule& pb = scenario.true_valuations[user];
  return ValuationSchedule(pb.begin(), pb.begin() + horizon);
}

ValuationSchedule lemma3_stage2(int user, const std::vector<int>& won,
                                const std::vector<Money>& winning_bid,
                                const Scenario& scenario, int horizon) {
  ValuationSchedule bid(horizon, Money(0));
  for (int k = 0; k < horizon; ++k) {
    if (std::binary_search(won.begin(), won.end(), k)) {
      Money others = scenario.true_total(k) - scenario.true_valuations[user][k];
      bid[k] = std::max(Money(0), winning_bid[k] - others);
    } else {
      bid[k] = scenario.true_valuations[user][k];
    }
  }
  return monotone_envelope(std::move(bid));
}

ValuationSchedule lemma4_stage1(int user, const Scenario& scenario,
                                const std::vector<Money>& opponents_max) {
  const int feasible = feasible_horizon(scenario);
  ValuationSchedule bid(scenario.k_max, Money(0));
  for (int k = 0; k < feasible; ++k) {
    if (opponents_max[k] < scenario.true_total(k)) {
      bid[k] = std::max(scenario.costs[k], opponents_max[k]) + scenario.bid_increment;
    }
  }
  return bid;
}

ValuationSchedule monotone_envelope(ValuationSchedule values) {
  for (std::size_t k = 1; k < values.size(); ++k) {
    values[k] = std::min(values[k], values[k - 1]);
  }
  return values;
}

BidProfile build_equilibrium_profile(const Scenario& scenario) {
  const int feasible = feasible_horizon(scenario);

  BidProfile profile;
  profile.stage1.assign(scenario.n, ValuationSchedule(scenario.k_max, Money(0)));
  for (int k = 0; k < feasible; ++k) {
    profile.stage1[0][k] = scenario.true_total(k);
  }

  const StageOneOutcome stage1 = run_stage_one(profile.stage1, scenario.costs);
  profile.stage2.assign(scenario.n, ValuationSchedule{});
  if (stage1.terminated) return profile;

  for (int i = 0; i < scenario.n; ++i) {
    if (stage1.is_winner(i)) {
      profile.stage2[i] = lemma3_stage2(i, stage1.won_features(i), stage1.winning_bid,
                                        scenario, stage1.horizon);
    } else {
      profile.stage2[i] = truthful_stage2(i, scenario, stage1.horizon);
    }
  }
  return profile;
}

StageOneBids build_stage1_bids(const StrategyAssignment& assignment, const Scenario& scenario) {
  if (static_cast<int>(assignment.size()) != scenario.n) {
    throw std::invalid_argument("strategy assignment must cover every user");
  }
  const BidProfile canonical = build_equilibrium_profile(scenario);

  StageOneBids bids(scenario.n);
  for (int i = 0; i < scenario.n; ++i) {
    switch (assignment[i].kind) {
      case StrategyKind::Truthful:
        bids[i] = scenario.joint_estimates[i];
        break;
      case StrategyKind::Equilibrium:
        bids[i] = canonical.stage1[i];
        break;
      case StrategyKind::Fixed:
        bids[i] = assignment[i].fixed_stage1;
        break;
    }
    bids[i].resize(scenario.k_max, Money(0));
  }
  return bids;
}

StageTwoBids build_stage2_bids(const StrategyAssignment& assignment, const Scenario& scenario,
                               const StageOneOutcome& stage1) {
  if (stage1.terminated) return StageTwoBids(scenario.n);

  StageTwoBids bids(scenario.n);
  for (int i = 0; i < scenario.n; ++i) {
    switch (assignment[i].kind) {
      case StrategyKind::Truthful:
        bids[i] = truthful_stage2(i, scenario, stage1.horizon);
        break;
      case StrategyKind::Equilibrium:
        if (stage1.is_winner(i)) {
          bids[i] = lemma3_stage2(i, stage1.won_features(i), stage1.winning_bid, scenario,
                                  stage1.horizon);
        } else {
          bids[i] = truthful_stage2(i, scenario, stage1.horizon);
        }
        break;
      case StrategyKind::Fixed:
        bids[i] = assignment[i].fixed_stage2;
        break;
    }
    bids[i].resize(stage1.horizon, Money(0));
  }
  return bids;
}

}  // namespace wscn

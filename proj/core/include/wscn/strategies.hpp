#pragma once

#include "wscn/mechanism.hpp"
#include "wscn/scenario.hpp"

#include <string>
#include <vector>

namespace wscn {

enum class StrategyKind { Truthful, Equilibrium, Fixed };

struct Strategy {
  StrategyKind kind = StrategyKind::Equilibrium;
  ValuationSchedule fixed_stage1;  // used only when kind == Fixed
  ValuationSchedule fixed_stage2;
};

/// One strategy per user.
using StrategyAssignment = std::vector<Strategy>;

StrategyKind parse_strategy_kind(const std::string& name);  // "truthful" | "equilibrium" | "fixed"
std::string strategy_name(StrategyKind kind);

/// Truthful stage-2 report: the user's private valuations over the
/// surviving features.
ValuationSchedule truthful_stage2(int user, const Scenario& scenario, int horizon);

/// A winner's best stage-2 reply: truthful on features it did not win and
/// max{0, winning_bid - others' true total} on those it did. The raw
/// values can dip below a later truthful entry, so the result is repaired
/// to a non-increasing schedule (each entry capped by its predecessor).
ValuationSchedule lemma3_stage2(int user, const std::vector<int>& won,
                                const std::vector<Money>& winning_bid,
                                const Scenario& scenario, int horizon);

/// Per-feature optimal stage-1 bid: within the feasible horizon, outbid
/// max{cost, opponents' best} by one increment when the opponents' best
/// sits below the community value, and bid zero otherwise (zero is the
/// deterministic pick from the losing range). Beyond the horizon: zero.
///
/// Returned verbatim, feature by feature; the vector may violate the
/// non-increasing schedule invariant and callers must run
/// monotone_envelope before using it as an actual bid.
ValuationSchedule lemma4_stage1(int user, const Scenario& scenario,
                                const std::vector<Money>& opponents_max);

/// Non-increasing repair: caps every entry by its predecessor.
ValuationSchedule monotone_envelope(ValuationSchedule values);

struct BidProfile {
  StageOneBids stage1;
  StageTwoBids stage2;
};

/// The canonical equilibrium fixture: user 1 opens with the full community
/// value (sum of private valuations) on every feasible feature, everyone
/// else stays out; in stage 2 the winner replies per lemma3_stage2 and the
/// rest bid truthfully. With no feasible feature the profile terminates
/// the mechanism.
BidProfile build_equilibrium_profile(const Scenario& scenario);

StageOneBids build_stage1_bids(const StrategyAssignment& assignment, const Scenario& scenario);

StageTwoBids build_stage2_bids(const StrategyAssignment& assignment, const Scenario& scenario,
                               const StageOneOutcome& stage1);

}  // namespace wscn

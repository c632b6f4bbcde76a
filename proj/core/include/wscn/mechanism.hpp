#pragma once

#include "wscn/money.hpp"
#include "wscn/scenario.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace wscn {

/// Stage-1 community-value bids, one schedule per user, catalog length.
using StageOneBids = std::vector<ValuationSchedule>;

/// Stage-2 private-value bids, one schedule per user, covering at least
/// the surviving features.
using StageTwoBids = std::vector<ValuationSchedule>;

class NotAWinner : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IsWinner : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct StageOneOutcome {
  bool terminated = true;
  int horizon = 0;                 // surviving feature count; a catalog prefix
  std::vector<Money> winning_bid;  // highest bid per surviving feature
  std::vector<int> winner_of;      // bidder holding it; ties go to the lowest index

  bool wins(int user, int k) const {
    return !terminated && k < horizon && winner_of[k] == user;
  }
  bool is_winner(int user) const;
  std::vector<int> won_features(int user) const;  // 0-based, ascending
};

/// Runs stage 1: the mechanism terminates when nobody's opening bid
/// exceeds the first feature's cost; otherwise each feature's highest bid
/// wins and features keep their winning bid above cost survive.
StageOneOutcome run_stage_one(const StageOneBids& bids, const CostSchedule& costs);

/// Adopted feature count shared by all non-winners: the largest count in
/// [0, horizon] maximizing the running total of (bid sum - winning bid).
/// Ties go to the largest count; zero adoption is always admitted.
int compute_k_nwu(const StageTwoBids& bids, const std::vector<Money>& winning_bid,
                  int horizon);

/// Adoption bounds for one winner, all expressed as feature counts.
struct WinnerInterval {
  int low = 0;           // last won feature whose bid total strictly beats the winning bid
  int last_success = 0;  // same with a weak comparison
  int high = 0;          // stretches to just before the next won feature, capped at horizon
  std::vector<int> permitted;  // adoption counts the winner may choose, ascending
};

/// Throws NotAWinner when the user holds no winning bid. The permitted set
/// is [low, high] when the non-winners' count falls outside
/// [last_success, high], and [low, last_success] plus that count otherwise.
WinnerInterval compute_winner_interval(int user, const StageTwoBids& bids,
                                       const StageOneOutcome& stage1, int k_nwu);

/// Picks the permitted adoption count maximizing the winner's utility
/// (true valuation of adopted features minus payment), holding all bids
/// fixed. Ties go to the smaller count.
int choose_k_wu(int user, const WinnerInterval& interval, const Scenario& scenario,
                const StageTwoBids& bids, const StageOneOutcome& stage1);

struct PaymentBreakdown {
  bool winner = false;

  // Non-winner: pays gamma (shares of adopted features) minus delta
  // (compensation over the remaining features).
  Money gamma;
  Money delta;

  // Winner: alpha1 cost residuals on successful features, alpha2 shares on
  // adopted-but-unsuccessful ones, alpha3 compensation received, alpha4
  // fines on failed features.
  Money alpha1;
  Money alpha2;
  Money alpha3;
  Money alpha4;

  // True when some fine/compensation summand was lifted to zero. Those
  // terms are transfers and never change sign; at equilibrium the floor is
  // inactive.
  bool clamped = false;

  Money net() const { return winner ? alpha1 + alpha2 - alpha3 + alpha4 : gamma - delta; }
};

/// Payment of a user holding no winning bid. Throws IsWinner otherwise.
PaymentBreakdown nonwinner_payment(int user, int k_nwu, const StageTwoBids& bids,
                                   const StageOneOutcome& stage1, const CostSchedule& costs);

/// Payment of a winner adopting `adopted` features. Throws NotAWinner when
/// the user holds no winning bid.
PaymentBreakdown winner_payment(int user, int adopted, const StageTwoBids& bids,
                                const StageOneOutcome& stage1, const CostSchedule& costs);

struct WinnerAdoption {
  WinnerInterval interval;
  int adopted = 0;
  std::vector<int> success;  // won features settled at the winner rate (0-based)
  std::vector<int> failure;  // the remaining won features
};

struct AdoptionResult {
  int k_nwu = 0;
  std::vector<std::optional<WinnerAdoption>> winners;  // engaged for winners only
};

AdoptionResult compute_adoption(const Scenario& scenario, const StageTwoBids& bids,
                                const StageOneOutcome& stage1);

struct MechanismOutcome {
  StageOneOutcome stage1;
  AdoptionResult adoption;
  std::vector<int> manufactured;   // features whose bid total reaches the winning bid
  std::vector<int> adopted_count;  // per user
  std::vector<PaymentBreakdown> payments;
  std::vector<Money> utilities;

  bool terminated() const { return stage1.terminated; }
  Money total_payment() const;
};

/// Runs both stages end to end. A terminated stage 1 yields an empty
/// manufactured set, zero payments and zero utilities. Pure in its inputs:
/// identical (scenario, bids) give identical outcomes.
MechanismOutcome run_mechanism(const Scenario& scenario, const StageOneBids& stage1_bids,
                               const StageTwoBids& stage2_bids);

/// One user's slice of the stage-2 outcome, without resolving the other
/// winners' adoption choices. Matches run_mechanism on the shared inputs;
/// the verifier's grid search leans on this being cheap.
struct UserEvaluation {
  int adopted = 0;
  PaymentBreakdown payment;
  Money utility;
};

UserEvaluation evaluate_stage2_user(int user, const Scenario& scenario,
                                    const StageTwoBids& bids, const StageOneOutcome& stage1);

}  // namespace wscn

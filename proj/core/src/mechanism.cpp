#include "wscn/mechanism.hpp"

#include "wscn/cost_sharing.hpp"

#include <algorithm>
#include <sstream>

namespace wscn {

bool StageOneOutcome::is_winner(int user) const {
  if (terminated) return false;
  for (int k = 0; k < horizon; ++k) {
    if (winner_of[k] == user) return true;
  }
  return false;
}

std::vector<int> StageOneOutcome::won_features(int user) const {
  std::vector<int> won;
  for (int k = 0; k < horizon; ++k) {
    if (winner_of[k] == user) won.push_back(k);
  }
  return won;
}

namespace {

Money clamp_zero(const Money& value, bool& clamped) {
  if (value < 0) {
    clamped = true;
    return Money(0);
  }
  return value;
}

void require_bid_shape(const std::vector<ValuationSchedule>& bids, int n, int min_len,
                       const char* label) {
  if (static_cast<int>(bids.size()) != n) {
    std::ostringstream msg;
    msg << label << ": expected " << n << " bid schedules, got " << bids.size();
    throw std::invalid_argument(msg.str());
  }
  std::vector<Violation> violations;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(bids[i].size()) < min_len) {
      std::ostringstream msg;
      msg << label << ": bid schedule of user " << i + 1 << " covers only "
          << bids[i].size() << " of " << min_len << " features";
      throw std::invalid_argument(msg.str());
    }
    for (int k = 0; k < min_len; ++k) {
      if (bids[i][k] < 0) {
        std::ostringstream msg;
        msg << label << ": bid of user " << i + 1 << " is negative at feature " << k + 1;
        violations.push_back({ValidationCode::NegativeValue, i + 1, k + 1, msg.str()});
      }
      if (k > 0 && bids[i][k] > bids[i][k - 1]) {
        std::ostringstream msg;
        msg << label << ": bid schedule of user " << i + 1 << " increases at feature "
            << k + 1;
        violations.push_back({ValidationCode::NonMonotoneSchedule, i + 1, k + 1, msg.str()});
      }
    }
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

// Won features settled at the winner rate under adoption count `adopted`:
// won, within the adopted prefix, and with the feature's total bid
// reaching the winning bid.
std::vector<int> success_set(int user, int adopted, const StageTwoBids& bids,
                             const StageOneOutcome& stage1) {
  std::vector<int> success;
  for (int k : stage1.won_features(user)) {
    if (k < adopted && column_sum(bids, k) >= stage1.winning_bid[k]) success.push_back(k);
  }
  return success;
}

}  // namespace

StageOneOutcome run_stage_one(const StageOneBids& bids, const CostSchedule& costs) {
  const int k_max = static_cast<int>(costs.size());

  StageOneOutcome outcome;
  std::vector<Money> best(k_max, Money(0));
  std::vector<int> holder(k_max, 0);
  for (int k = 0; k < k_max; ++k) {
    for (int i = 0; i < static_cast<int>(bids.size()); ++i) {
      const Money& bid = k < static_cast<int>(bids[i].size()) ? bids[i][k] : Money(0);
      if (i == 0 || bid > best[k]) {
        best[k] = bid;
        holder[k] = i;
      }
    }
  }

  // Surviving features are the prefix whose winning bid beats the cost;
  // an empty prefix is exactly the "nobody outbids c(1)" termination.
  int horizon = 0;
  for (int k = 0; k < k_max; ++k) {
    if (best[k] > costs[k]) horizon = k + 1;
  }
  if (horizon == 0) return outcome;

  outcome.terminated = false;
  outcome.horizon = horizon;
  outcome.winning_bid.assign(best.begin(), best.begin() + horizon);
  outcome.winner_of.assign(holder.begin(), holder.begin() + horizon);
  return outcome;
}

int compute_k_nwu(const StageTwoBids& bids, const std::vector<Money>& winning_bid,
                  int horizon) {
  Money running = 0;
  Money best = 0;
  int best_count = 0;
  for (int k = 0; k < horizon; ++k) {
    running += column_sum(bids, k) - winning_bid[k];
    if (running >= best) {  // >= : ties go to the largest count
      best = running;
      best_count = k + 1;
    }
  }
  return best_count;
}

WinnerInterval compute_winner_interval(int user, const StageTwoBids& bids,
                                       const StageOneOutcome& stage1, int k_nwu) {
  const std::vector<int> won = stage1.won_features(user);
  if (won.empty()) {
    throw NotAWinner("user " + std::to_string(user + 1) + " holds no winning bid");
  }

  WinnerInterval interval;
  for (int k : won) {
    const Money total = column_sum(bids, k);
    if (total > stage1.winning_bid[k]) interval.low = k + 1;
    if (total >= stage1.winning_bid[k]) interval.last_success = k + 1;
  }

  interval.high = stage1.horizon;
  for (int k : won) {
    if (k >= interval.last_success) {  // first won feature beyond the last success
      interval.high = std::min(stage1.horizon, k);
      break;
    }
  }

  if (k_nwu < interval.last_success || k_nwu > interval.high) {
    for (int m = interval.low; m <= interval.high; ++m) interval.permitted.push_back(m);
  } else {
    for (int m = interval.low; m <= interval.last_success; ++m) interval.permitted.push_back(m);
    if (interval.permitted.empty() || interval.permitted.back() != k_nwu) {
      interval.permitted.push_back(k_nwu);
    }
  }
  return interval;
}

int choose_k_wu(int user, const WinnerInterval& interval, const Scenario& scenario,
                const StageTwoBids& bids, const StageOneOutcome& stage1) {
  int best_count = interval.permitted.front();
  Money best_utility;
  bool first = true;
  for (int m : interval.permitted) {
    Money utility = -winner_payment(user, m, bids, stage1, scenario.costs).net();
    for (int k = 0; k < m; ++k) utility += scenario.true_valuations[user][k];
    if (first || utility > best_utility) {  // strict: ties keep the smaller count
      best_utility = utility;
      best_count = m;
      first = false;
    }
  }
  return best_count;
}

PaymentBreakdown nonwinner_payment(int user, int k_nwu, const StageTwoBids& bids,
                                   const StageOneOutcome& stage1, const CostSchedule& costs) {
  if (stage1.is_winner(user)) {
    throw IsWinner("user " + std::to_string(user + 1) + " won a bid");
  }

  PaymentBreakdown payment;
  for (int k = 0; k < k_nwu; ++k) {
    payment.gamma +=
        mu(stage1.winning_bid[k], column_excluding(bids, k, user), costs[k]);
  }
  for (int k = k_nwu; k < stage1.horizon; ++k) {
    const Money share = mu(stage1.winning_bid[k], column_excluding(bids, k, user), costs[k]);
    payment.delta += clamp_zero(
        stage1.winning_bid[k] - column_sum_excluding(bids, k, user) - share,
        payment.clamped);
  }
  return payment;
}

PaymentBreakdown winner_payment(int user, int adopted, const StageTwoBids& bids,
                                const StageOneOutcome& stage1, const CostSchedule& costs) {
  const std::vector<int> won = stage1.won_features(user);
  if (won.empty()) {
    throw NotAWinner("user " + std::to_string(user + 1) + " holds no winning bid");
  }

  const std::vector<int> success = success_set(user, adopted, bids, stage1);
  std::vector<int> failure;
  std::set_difference(won.begin(), won.end(), success.begin(), success.end(),
                      std::back_inserter(failure));

  PaymentBreakdown payment;
  payment.winner = true;

  const int n = static_cast<int>(bids.size());
  for (int k : success) {
    Money others_share = 0;
    for (int j = 0; j < n; ++j) {
      if (j == user) continue;
      others_share += mu(stage1.winning_bid[k], column_excluding(bids, k, j), costs[k]);
    }
    payment.alpha1 += costs[k] - others_share;
  }

  for (int k = 0; k < adopted; ++k) {
    if (std::binary_search(success.begin(), success.end(), k)) continue;
    payment.alpha2 +=
        mu(stage1.winning_bid[k], column_excluding(bids, k, user), costs[k]);
  }

  for (int k = adopted; k < stage1.horizon; ++k) {
    if (std::binary_search(failure.begin(), failure.end(), k)) continue;
    const Money share = mu(stage1.winning_bid[k], column_excluding(bids, k, user), costs[k]);
    payment.alpha3 += clamp_zero(
        stage1.winning_bid[k] - column_sum_excluding(bids, k, user) - share,
        payment.clamped);
  }

  for (int k : failure) {
    for (int j = 0; j < n; ++j) {
      if (j == user) continue;
      const Money share = mu(stage1.winning_bid[k], column_excluding(bids, k, j), costs[k]);
      payment.alpha4 += clamp_zero(
          stage1.winning_bid[k] - column_sum_excluding(bids, k, j) - share,
          payment.clamped);
    }
  }
  return payment;
}

AdoptionResult compute_adoption(const Scenario& scenario, const StageTwoBids& bids,
                                const StageOneOutcome& stage1) {
  AdoptionResult result;
  result.k_nwu = compute_k_nwu(bids, stage1.winning_bid, stage1.horizon);
  result.winners.resize(scenario.n);
  for (int i = 0; i < scenario.n; ++i) {
    if (!stage1.is_winner(i)) continue;
    WinnerAdoption adoption;
    adoption.interval = compute_winner_interval(i, bids, stage1, result.k_nwu);
    adoption.adopted = choose_k_wu(i, adoption.interval, scenario, bids, stage1);
    adoption.success = success_set(i, adoption.adopted, bids, stage1);
    const std::vector<int> won = stage1.won_features(i);
    std::set_difference(won.begin(), won.end(), adoption.success.begin(),
                        adoption.success.end(), std::back_inserter(adoption.failure));
    result.winners[i] = std::move(adoption);
  }
  return result;
}

Money MechanismOutcome::total_payment() const {
  Money total = 0;
  for (const auto& payment : payments) total += payment.net();
  return total;
}

MechanismOutcome run_mechanism(const Scenario& scenario, const StageOneBids& stage1_bids,
                               const StageTwoBids& stage2_bids) {
  require_bid_shape(stage1_bids, scenario.n, 0, "stage 1");
  StageOneBids padded = stage1_bids;
  for (auto& row : padded) {
    if (static_cast<int>(row.size()) > scenario.k_max) {
      throw std::invalid_argument("stage 1: bid schedule longer than the catalog");
    }
    row.resize(scenario.k_max, Money(0));
  }
  require_bid_shape(padded, scenario.n, scenario.k_max, "stage 1");

  MechanismOutcome outcome;
  outcome.stage1 = run_stage_one(padded, scenario.costs);
  outcome.adopted_count.assign(scenario.n, 0);
  outcome.payments.assign(scenario.n, PaymentBreakdown{});
  outcome.utilities.assign(scenario.n, Money(0));
  if (outcome.stage1.terminated) return outcome;

  require_bid_shape(stage2_bids, scenario.n, outcome.stage1.horizon, "stage 2");
  StageTwoBids bids(scenario.n);
  for (int i = 0; i < scenario.n; ++i) {
    bids[i].assign(stage2_bids[i].begin(), stage2_bids[i].begin() + outcome.stage1.horizon);
  }

  outcome.adoption = compute_adoption(scenario, bids, outcome.stage1);
  for (int k = 0; k < outcome.stage1.horizon; ++k) {
    if (column_sum(bids, k) >= outcome.stage1.winning_bid[k]) {
      outcome.manufactured.push_back(k);
    }
  }

  for (int i = 0; i < scenario.n; ++i) {
    if (outcome.adoption.winners[i]) {
      const WinnerAdoption& adoption = *outcome.adoption.winners[i];
      outcome.adopted_count[i] = adoption.adopted;
      outcome.payments[i] =
          winner_payment(i, adoption.adopted, bids, outcome.stage1, scenario.costs);
    } else {
      outcome.adopted_count[i] = outcome.adoption.k_nwu;
      outcome.payments[i] =
          nonwinner_payment(i, outcome.adoption.k_nwu, bids, outcome.stage1, scenario.costs);
    }
    Money utility = -outcome.payments[i].net();
    for (int k = 0; k < outcome.adopted_count[i]; ++k) {
      utility += scenario.true_valuations[i][k];
    }
    outcome.utilities[i] = utility;
  }
  return outcome;
}

UserEvaluation evaluate_stage2_user(int user, const Scenario& scenario,
                                    const StageTwoBids& bids, const StageOneOutcome& stage1) {
  UserEvaluation eval;
  if (stage1.is_winner(user)) {
    const int k_nwu = compute_k_nwu(bids, stage1.winning_bid, stage1.horizon);
    const WinnerInterval interval = compute_winner_interval(user, bids, stage1, k_nwu);
    eval.adopted = choose_k_wu(user, interval, scenario, bids, stage1);
    eval.payment = winner_payment(user, eval.adopted, bids, stage1, scenario.costs);
  } else {
    eval.adopted = compute_k_nwu(bids, stage1.winning_bid, stage1.horizon);
    eval.payment = nonwinner_payment(user, eval.adopted, bids, stage1, scenario.costs);
  }
  eval.utility = -eval.payment.net();
  for (int k = 0; k < eval.adopted; ++k) eval.utility += scenario.true_valuations[user][k];
  return eval;
}

}  // namespace wscn

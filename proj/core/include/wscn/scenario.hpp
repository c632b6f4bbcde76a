#pragma once

#include "wscn/money.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wscn {

/// Per-feature monetary values of one user. Valid schedules are
/// non-negative and non-increasing in the feature index.
using ValuationSchedule = std::vector<Money>;

/// Per-feature manufacture costs. Valid schedules are non-negative and
/// non-decreasing in the feature index.
using CostSchedule = std::vector<Money>;

bool is_non_increasing(std::span<const Money> values);
bool is_non_decreasing(std::span<const Money> values);

/// Sum of all users' values at feature `k` (0-based).
Money column_sum(const std::vector<ValuationSchedule>& schedules, int k);

/// Same, leaving out one user.
Money column_sum_excluding(const std::vector<ValuationSchedule>& schedules, int k,
                           int excluded_user);

/// Column at feature `k` with one user's entry removed; order preserved.
std::vector<Money> column_excluding(const std::vector<ValuationSchedule>& schedules, int k,
                                    int excluded_user);

struct Scenario {
  std::string name;
  int n = 0;      // participating users
  int k_max = 0;  // candidate feature count

  std::vector<ValuationSchedule> true_valuations;  // one per user, private values
  std::vector<ValuationSchedule> joint_estimates;  // one per user, community-value estimates
  CostSchedule costs;

  Money bid_increment;  // smallest bid step, > 0
  std::uint64_t seed = 0;

  /// Total true valuation of feature `k` (0-based) across users.
  Money true_total(int k) const { return column_sum(true_valuations, k); }
};

enum class ValidationCode {
  NonMonotoneSchedule,
  NegativeValue,
  EmptyScenario,
  NonPositiveIncrement,
  ShapeMismatch,
};

struct Violation {
  ValidationCode code;
  int user = 0;   // 1-based; 0 when not tied to a user (e.g. the cost schedule)
  int index = 0;  // 1-based feature position; 0 when not positional
  std::string message;
};

/// Carries every violated invariant, not just the first one found.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Checks all scenario invariants and throws a ValidationError listing
/// every violation. On success returns the normalized scenario: user
/// schedules zero-padded to k_max (a missing tail bid means "no value").
/// Validating an already-validated scenario returns it unchanged.
Scenario validate_scenario(const Scenario& raw);

/// Largest feature count whose summed true valuations strictly exceed the
/// cost; 0 when no feature qualifies. The qualifying set is a prefix of
/// the catalog because value totals fall and costs rise with the index.
int feasible_horizon(const Scenario& scenario);

}  // namespace wscn

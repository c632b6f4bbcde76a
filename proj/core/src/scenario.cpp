#include "wscn/scenario.hpp"

#include <sstream>

namespace wscn {

bool is_non_increasing(std::span<const Money> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1]) return false;
  }
  return true;
}

bool is_non_decreasing(std::span<const Money> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1]) return false;
  }
  return true;
}

Money column_sum(const std::vector<ValuationSchedule>& schedules, int k) {
  Money total = 0;
  for (const auto& schedule : schedules) {
    if (k < static_cast<int>(schedule.size())) total += schedule[k];
  }
  return total;
}

Money column_sum_excluding(const std::vector<ValuationSchedule>& schedules, int k,
                           int excluded_user) {
  Money total = 0;
  for (int i = 0; i < static_cast<int>(schedules.size()); ++i) {
    if (i == excluded_user) continue;
    if (k < static_cast<int>(schedules[i].size())) total += schedules[i][k];
  }
  return total;
}

std::vector<Money> column_excluding(const std::vector<ValuationSchedule>& schedules, int k,
                                    int excluded_user) {
  std::vector<Money> column;
  column.reserve(schedules.size() > 0 ? schedules.size() - 1 : 0);
  for (int i = 0; i < static_cast<int>(schedules.size()); ++i) {
    if (i == excluded_user) continue;
    column.push_back(k < static_cast<int>(schedules[i].size()) ? schedules[i][k] : Money(0));
  }
  return column;
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "scenario validation failed (" << violations.size() << " violation"
      << (violations.size() == 1 ? "" : "s") << "):";
  for (const auto& v : violations) out << "\n  - " << v.message;
  return out.str();
}

void check_schedule(const ValuationSchedule& schedule, int user_1based,
                    const std::string& label, int k_max, std::vector<Violation>& out) {
  if (static_cast<int>(schedule.size()) > k_max) {
    std::ostringstream msg;
    msg << label << " of user " << user_1based << " has " << schedule.size()
        << " entries but the catalog holds " << k_max;
    out.push_back({ValidationCode::ShapeMismatch, user_1based, 0, msg.str()});
    return;
  }
  for (int k = 0; k < static_cast<int>(schedule.size()); ++k) {
    if (schedule[k] < 0) {
      std::ostringstream msg;
      msg << label << " of user " << user_1based << " is negative at feature " << k + 1;
      out.push_back({ValidationCode::NegativeValue, user_1based, k + 1, msg.str()});
    }
    if (k > 0 && schedule[k] > schedule[k - 1]) {
      std::ostringstream msg;
      msg << label << " of user " << user_1based << " increases at feature " << k + 1 << " ("
          << format_money(schedule[k - 1]) << " -> " << format_money(schedule[k]) << ")";
      out.push_back({ValidationCode::NonMonotoneSchedule, user_1based, k + 1, msg.str()});
    }
  }
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

Scenario validate_scenario(const Scenario& raw) {
  std::vector<Violation> violations;

  if (raw.n < 2 || raw.k_max < 1) {
    std::ostringstream msg;
    msg << "need at least 2 users and 1 candidate feature, got n=" << raw.n
        << " k_max=" << raw.k_max;
    violations.push_back({ValidationCode::EmptyScenario, 0, 0, msg.str()});
  }
  if (raw.bid_increment <= 0) {
    violations.push_back({ValidationCode::NonPositiveIncrement, 0, 0,
                          "bid increment must be positive, got " +
                              format_money(raw.bid_increment)});
  }

  if (static_cast<int>(raw.true_valuations.size()) != raw.n) {
    std::ostringstream msg;
    msg << "expected " << raw.n << " private valuation schedules, got "
        << raw.true_valuations.size();
    violations.push_back({ValidationCode::ShapeMismatch, 0, 0, msg.str()});
  }
  if (!raw.joint_estimates.empty() &&
      static_cast<int>(raw.joint_estimates.size()) != raw.n) {
    std::ostringstream msg;
    msg << "expected " << raw.n << " joint estimate schedules, got "
        << raw.joint_estimates.size();
    violations.push_back({ValidationCode::ShapeMismatch, 0, 0, msg.str()});
  }
  if (static_cast<int>(raw.costs.size()) != raw.k_max) {
    std::ostringstream msg;
    msg << "expected one cost per catalog feature (" << raw.k_max << "), got "
        << raw.costs.size();
    violations.push_back({ValidationCode::ShapeMismatch, 0, 0, msg.str()});
  }

  for (int i = 0; i < static_cast<int>(raw.true_valuations.size()); ++i) {
    check_schedule(raw.true_valuations[i], i + 1, "private valuation", raw.k_max, violations);
  }
  for (int i = 0; i < static_cast<int>(raw.joint_estimates.size()); ++i) {
    check_schedule(raw.joint_estimates[i], i + 1, "joint estimate", raw.k_max, violations);
  }
  for (int k = 0; k < static_cast<int>(raw.costs.size()); ++k) {
    if (raw.costs[k] < 0) {
      violations.push_back({ValidationCode::NegativeValue, 0, k + 1,
                            "cost is negative at feature " + std::to_string(k + 1)});
    }
    if (k > 0 && raw.costs[k] < raw.costs[k - 1]) {
      std::ostringstream msg;
      msg << "cost schedule decreases at feature " << k + 1 << " ("
          << format_money(raw.costs[k - 1]) << " -> " << format_money(raw.costs[k]) << ")";
      violations.push_back({ValidationCode::NonMonotoneSchedule, 0, k + 1, msg.str()});
    }
  }

  if (!violations.empty()) throw ValidationError(std::move(violations));

  Scenario normalized = raw;
  for (auto& schedule : normalized.true_valuations) schedule.resize(raw.k_max, Money(0));
  if (normalized.joint_estimates.empty()) {
    normalized.joint_estimates = normalized.true_valuations;
  } else {
    for (auto& schedule : normalized.joint_estimates) schedule.resize(raw.k_max, Money(0));
  }
  return normalized;
}

int feasible_horizon(const Scenario& scenario) {
  int horizon = 0;
  for (int k = 0; k < scenario.k_max; ++k) {
    if (scenario.true_total(k) > scenario.costs[k]) horizon = k + 1;
  }
  return horizon;
}

}  // namespace wscn

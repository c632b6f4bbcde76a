#include <doctest.h>

#include "wscn/scenario.hpp"
#include "wscn/verifier.hpp"

#include "test_support.hpp"

using namespace wscn;

namespace {

bool has_violation(const ValidationError& e, ValidationCode code, int user, int index) {
  for (const auto& v : e.violations()) {
    if (v.code == code && v.user == user && v.index == index) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("worked scenario validates and pads") {
  const Scenario s = test::worked_scenario();
  CHECK(s.n == 3);
  CHECK(s.k_max == 2);
  CHECK(s.true_valuations[0].size() == 2);
  CHECK(s.true_total(0) == Money(12));
  CHECK(s.true_total(1) == Money(9));
}

TEST_CASE("increasing valuation schedule is rejected with user and index") {
  Scenario s = test::worked_scenario();
  s.true_valuations[0] = {2, 5};
  try {
    validate_scenario(s);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(has_violation(e, ValidationCode::NonMonotoneSchedule, 1, 2));
  }
}

TEST_CASE("one-user scenarios are rejected") {
  Scenario s;
  s.n = 1;
  s.k_max = 1;
  s.true_valuations = {{3}};
  s.costs = {1};
  s.bid_increment = 1;
  try {
    validate_scenario(s);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(has_violation(e, ValidationCode::EmptyScenario, 0, 0));
  }
}

TEST_CASE("every violated invariant is reported at once") {
  Scenario s = test::worked_scenario();
  s.bid_increment = 0;               // NonPositiveIncrement
  s.true_valuations[1] = {-1, -2};   // NegativeValue
  s.costs = {6, 4};                  // NonMonotoneSchedule on costs
  try {
    validate_scenario(s);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violations().size() >= 3);
    CHECK(has_violation(e, ValidationCode::NonPositiveIncrement, 0, 0));
    CHECK(has_violation(e, ValidationCode::NegativeValue, 2, 1));
    CHECK(has_violation(e, ValidationCode::NonMonotoneSchedule, 0, 2));
  }
}

TEST_CASE("over-long schedules and missing costs are shape errors") {
  Scenario s = test::worked_scenario();
  s.true_valuations[0] = {5, 4, 3};  // three entries, catalog holds two
  CHECK_THROWS_AS(validate_scenario(s), ValidationError);

  Scenario t = test::worked_scenario();
  t.costs = {4};
  CHECK_THROWS_AS(validate_scenario(t), ValidationError);
}

TEST_CASE("validation is idempotent") {
  const Scenario once = test::worked_scenario();
  const Scenario twice = validate_scenario(once);
  CHECK(twice.true_valuations == once.true_valuations);
  CHECK(twice.joint_estimates == once.joint_estimates);
  CHECK(twice.costs == once.costs);
  CHECK(twice.n == once.n);
  CHECK(twice.k_max == once.k_max);
}

TEST_CASE("short schedules are padded with zero-value features") {
  Scenario s = test::worked_scenario();
  s.true_valuations[2] = {3};  // user 3 only bids the first feature
  const Scenario v = validate_scenario(s);
  CHECK(v.true_valuations[2] == ValuationSchedule{3, 0});
}

TEST_CASE("feasible horizon uses a strict comparison") {
  Scenario s = test::worked_scenario();
  CHECK(feasible_horizon(s) == 2);  // 12 > 4, 9 > 6

  s.true_valuations = {{2}, {1}};
  s.joint_estimates.clear();
  s.n = 2;
  s.k_max = 1;
  s.costs = {5};
  CHECK(feasible_horizon(validate_scenario(s)) == 0);  // 3 < 5

  Scenario tie = test::worked_scenario();
  tie.true_valuations = {{5, 3}, {5, 3}};  // totals (10, 6)
  tie.joint_estimates.clear();
  tie.n = 2;
  CHECK(feasible_horizon(validate_scenario(tie)) == 1);  // 6 > 6 fails at the tie
}

TEST_CASE("appending zero-value features never changes the horizon") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomScenarioSpec spec;
    Scenario s = random_scenario(spec, seed);
    const int before = feasible_horizon(s);

    Scenario padded = s;
    padded.k_max += 2;
    padded.costs.push_back(padded.costs.back());
    padded.costs.push_back(padded.costs.back());
    padded = validate_scenario(padded);  // schedules pick up two zero features
    CHECK(feasible_horizon(padded) == before);
  }
}

TEST_CASE("the qualifying feature set is a prefix") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    RandomScenarioSpec spec;
    Scenario s = random_scenario(spec, seed);
    const int horizon = feasible_horizon(s);
    for (int k = 0; k < s.k_max; ++k) {
      CHECK((s.true_total(k) > s.costs[k]) == (k < horizon));
    }
  }
}

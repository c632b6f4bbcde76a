#pragma once

#include "wscn/scenario.hpp"

namespace wscn::test {

// Three users, two features, costs (4, 6). The equilibrium outcome is
// known in closed form: payments (13/3, 10/3, 7/3), utilities
// (14/3, 11/3, 8/3), both features manufactured.
inline Scenario worked_scenario() {
  Scenario s;
  s.name = "worked-scenario";
  s.n = 3;
  s.k_max = 2;
  s.true_valuations = {{5, 4}, {4, 3}, {3, 2}};
  s.joint_estimates = {{12, 9}, {12, 9}, {12, 9}};
  s.costs = {4, 6};
  s.bid_increment = Money(1) / 100;
  s.seed = 42;
  return validate_scenario(s);
}

}  // namespace wscn::test

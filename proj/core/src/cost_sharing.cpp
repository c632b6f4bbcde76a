#include "wscn/cost_sharing.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace wscn {

std::vector<Money> phi(std::span<const Money> values, const Money& cost) {
  std::vector<Money> shares(values.size(), Money(0));
  if (values.empty() || cost == 0) return shares;

  Money total = 0;
  for (const Money& v : values) total += v;

  if (total == 0) {
    const Money each = cost / Money(static_cast<int>(values.size()));
    std::fill(shares.begin(), shares.end(), each);
    return shares;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    shares[i] = cost * values[i] / total;
  }
  return shares;
}

std::vector<Money> pi(const std::vector<ValuationSchedule>& true_valuations,
                      const CostSchedule& costs, int horizon) {
  std::vector<Money> totals(true_valuations.size(), Money(0));
  for (int k = 0; k < horizon; ++k) {
    std::vector<Money> column;
    column.reserve(true_valuations.size());
    Money column_total = 0;
    for (const auto& schedule : true_valuations) {
      Money v = k < static_cast<int>(schedule.size()) ? schedule[k] : Money(0);
      column_total += v;
      column.push_back(std::move(v));
    }
    if (column_total <= costs[k]) {
      std::ostringstream msg;
      msg << "feature " << k + 1 << " lies outside the feasible domain: total valuation "
          << format_money(column_total) << " does not exceed cost " << format_money(costs[k]);
      throw DomainViolation(msg.str());
    }
    std::vector<Money> shares = phi(column, costs[k]);
    for (std::size_t i = 0; i < shares.size(); ++i) totals[i] += shares[i];
  }
  return totals;
}

Money mu(const Money& reference, std::span<const Money> others, const Money& cost) {
  Money others_total = 0;
  for (const Money& v : others) others_total += v;
  if (others_total > reference) return Money(0);

  std::vector<Money> augmented;
  augmented.reserve(others.size() + 1);
  augmented.push_back(reference - others_total);
  augmented.insert(augmented.end(), others.begin(), others.end());
  return phi(augmented, cost)[0];
}

namespace {

std::string render_vector(std::span<const Money> values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += format_money(values[i]);
  }
  return out + "]";
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int draw(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  std::vector<Money> draw_values(int count, int cap) {
    std::vector<Money> values;
    values.reserve(count);
    for (int i = 0; i < count; ++i) values.emplace_back(draw(0, cap));
    return values;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

PropertyReport check_phi_monotonicity(const SampleSpec& spec, const Money& lambda) {
  PropertyReport report;
  Sampler sampler(spec.seed);

  for (int point = 0; point < spec.count; ++point) {
    // Sample within the rule's domain: sum(values) > cost, shifted user >= lambda.
    int n = sampler.draw(2, std::max(2, spec.max_users));
    std::vector<Money> values;
    Money total;
    int user;
    do {
      values = sampler.draw_values(n, spec.value_cap);
      total = std::accumulate(values.begin(), values.end(), Money(0));
      user = sampler.draw(0, n - 1);
    } while (total == 0 || values[user] < lambda);
    const Money cost(sampler.draw(0, spec.value_cap));
    if (total <= cost) {
      --point;  // off-domain draw, replace it
      continue;
    }

    const std::vector<Money> base = phi(values, cost);
    ++report.points;

    for (int j = 0; j < n; ++j) {
      if (j == user) continue;

      std::vector<Money> raised = values;
      raised[j] += lambda;
      if (phi(raised, cost)[user] > base[user]) {
        std::ostringstream detail;
        detail << "values=" << render_vector(values) << " cost=" << format_money(cost)
               << " user=" << user + 1 << ": raising opponent " << j + 1 << " by "
               << format_money(lambda) << " raised the share from "
               << format_money(base[user]) << " to " << format_money(phi(raised, cost)[user]);
        report.violations.push_back({"opponent-raise lowers share", detail.str()});
      }

      std::vector<Money> shifted = values;
      shifted[user] -= lambda;
      shifted[j] += lambda;
      if (phi(shifted, cost)[user] < base[user] - lambda) {
        std::ostringstream detail;
        detail << "values=" << render_vector(values) << " cost=" << format_money(cost)
               << " user=" << user + 1 << " opponent=" << j + 1
               << " lambda=" << format_money(lambda) << ": shifted share "
               << format_money(phi(shifted, cost)[user]) << " < "
               << format_money(base[user] - lambda);
        report.violations.push_back({"lambda-shift lower bound", detail.str()});
      }
    }

    // Anonymity: shares follow the users under any relabeling.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[sampler.draw(0, i)]);
    std::vector<Money> permuted(n);
    for (int i = 0; i < n; ++i) permuted[i] = values[perm[i]];
    const std::vector<Money> permuted_shares = phi(permuted, cost);
    for (int i = 0; i < n; ++i) {
      if (permuted_shares[i] != base[perm[i]]) {
        report.violations.push_back(
            {"anonymity", "values=" + render_vector(values) + " cost=" + format_money(cost)});
        break;
      }
    }
  }
  return report;
}

PropertyReport check_mu_properties(const SampleSpec& spec) {
  PropertyReport report;
  Sampler sampler(spec.seed);

  for (int point = 0; point < spec.count; ++point) {
    const int n_others = sampler.draw(1, std::max(1, spec.max_users - 1));
    const Money lambda(sampler.draw(1, 3));
    ++report.points;

    // (1) non-decreasing in the reference, others' total positive.
    {
      std::vector<Money> others;
      Money others_total;
      do {
        others = sampler.draw_values(n_others, spec.value_cap);
        others_total = std::accumulate(others.begin(), others.end(), Money(0));
      } while (others_total == 0);
      const Money cost(sampler.draw(0, spec.value_cap));
      const Money x(sampler.draw(0, spec.value_cap));
      const Money lo = mu(x, others, cost);
      const Money hi = mu(x + lambda, others, cost);
      if (hi < lo) {
        std::ostringstream detail;
        detail << "x=" << format_money(x) << " others=" << render_vector(others)
               << " cost=" << format_money(cost) << ": mu fell from " << format_money(lo)
               << " to " << format_money(hi) << " as the reference rose";
        report.violations.push_back({"mu non-decreasing in reference", detail.str()});
      }
    }

    // (2) chain: mu(x, others) >= mu(x, others with one bumped) >= mu(x, others) - lambda.
    {
      std::vector<Money> others = sampler.draw_values(n_others, spec.value_cap);
      const int x_int = sampler.draw(1, spec.value_cap);
      const Money x(x_int);
      const Money cost(sampler.draw(0, x_int));  // x >= cost, see header
      const int j = sampler.draw(0, n_others - 1);
      std::vector<Money> bumped = others;
      bumped[j] += lambda;
      const Money a = mu(x, others, cost);
      const Money b = mu(x, bumped, cost);
      if (!(a >= b && b >= a - lambda)) {
        std::ostringstream detail;
        detail << "x=" << format_money(x) << " others=" << render_vector(others)
               << " cost=" << format_money(cost) << " lambda=" << format_money(lambda)
               << ": chain " << format_money(a) << " >= " << format_money(b)
               << " >= " << format_money(a - lambda) << " broken";
        report.violations.push_back({"mu opponent-bump chain", detail.str()});
      }
    }

    // (3) joint bump of reference and one opponent does not raise mu,
    //     others' total below the reference.
    {
      std::vector<Money> others = sampler.draw_values(n_others, spec.value_cap);
      Money others_total = std::accumulate(others.begin(), others.end(), Money(0));
      const Money x = others_total + Money(sampler.draw(1, spec.value_cap));
      const Money cost(sampler.draw(0, spec.value_cap));
      const int j = sampler.draw(0, n_others - 1);
      std::vector<Money> bumped = others;
      bumped[j] += lambda;
      const Money before = mu(x, others, cost);
      const Money after = mu(x + lambda, bumped, cost);
      if (after > before) {
        std::ostringstream detail;
        detail << "x=" << format_money(x) << " others=" << render_vector(others)
               << " cost=" << format_money(cost) << " lambda=" << format_money(lambda)
               << ": mu rose from " << format_money(before) << " to " << format_money(after);
        report.violations.push_back({"mu joint-bump upper bound", detail.str()});
      }
    }
  }
  return report;
}

}  // namespace wscn

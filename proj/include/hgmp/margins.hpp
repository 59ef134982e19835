#pragma once

#include <string_view>

#include "hgmp/types.hpp"

namespace hgmp {

// Incentive scalars of one agent. `own_incentive` is I_h for hunters and I_g
// for gatherers; `extra_incentive` is the shared I_ex.
struct MarginParams {
  Role role = Role::kGatherer;
  double alpha = 0.0;
  double beta = 0.0;
  double own_incentive = 0.0;
  double extra_incentive = 0.0;

  static MarginParams hunter(double alpha, double beta, double incentive, double extra) {
    return {Role::kHunter, alpha, beta, incentive, extra};
  }
  static MarginParams gatherer(double alpha, double beta, double incentive, double extra) {
    return {Role::kGatherer, alpha, beta, incentive, extra};
  }

  // Throws std::invalid_argument on negative or non-finite fields.
  void validate() const;
};

// Shares of I_ex for which the agent's utility is non-negative: [lower, 1],
// or empty when no share can make the task profitable.
struct ProfitInterval {
  double lower = 0.0;
  double upper = 1.0;
  bool empty = false;

  static ProfitInterval none() { return {1.0, 1.0, true}; }
  bool contains(double share) const { return !empty && share >= lower && share <= upper; }
};

enum class MarginState {
  kCertain,       // inside the certainty margin: profitable at any share
  kUncertain,     // between the margins: profit depends on the share
  kUnprofitable,  // beyond the uncertainty margin: no share helps
};

std::string_view to_string(MarginState state);

// alpha * own_incentive
double certainty_radius(const MarginParams& params);
// certainty_radius + beta * extra_incentive
double uncertainty_radius(const MarginParams& params);

// Boundary costs resolve toward the profitable side: cost == R_c is
// kUncertain, cost == R_u is still kUncertain.
MarginState classify_state(double cost, const MarginParams& params);

ProfitInterval profit_interval(double cost, const MarginParams& params);

// alpha * own_incentive + beta * share * extra_incentive - cost
double utility(double cost, double share, const MarginParams& params);

}  // namespace hgmp

#include "hgmp/margins.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hgmp {

void MarginParams::validate() const {
  for (const double v : {alpha, beta, own_incentive, extra_incentive}) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("margin parameters must be finite and non-negative");
  }
}

std::string_view to_string(MarginState state) {
  switch (state) {
    case MarginState::kCertain: return "state1";
    case MarginState::kUncertain: return "state2";
    case MarginState::kUnprofitable: return "state3";
  }
  return "?";
}

double certainty_radius(const MarginParams& params) { return params.alpha * params.own_incentive; }

double uncertainty_radius(const MarginParams& params) {
  return certainty_radius(params) + params.beta * params.extra_incentive;
}

MarginState classify_state(double cost, const MarginParams& params) {
  if (cost < certainty_radius(params)) return MarginState::kCertain;
  if (cost <= uncertainty_radius(params)) return MarginState::kUncertain;
  return MarginState::kUnprofitable;
}

ProfitInterval profit_interval(double cost, const MarginParams& params) {
  // Emptiness follows the state classification so both stay consistent at
  // the R_u boundary regardless of rounding in the division below.
  if (classify_state(cost, params) == MarginState::kUnprofitable) return ProfitInterval::none();
  const double scale = params.beta * params.extra_incentive;
  const double excess = cost - certainty_radius(params);
  if (scale == 0.0 || excess <= 0.0) return ProfitInterval{0.0, 1.0, false};
  return ProfitInterval{std::clamp(excess / scale, 0.0, 1.0), 1.0, false};
}

double utility(double cost, double share, const MarginParams& params) {
  return params.alpha * params.own_incentive + params.beta * share * params.extra_incentive - cost;
}

}  // namespace hgmp

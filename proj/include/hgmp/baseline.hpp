#pragma once

#include "hgmp/config.hpp"
#include "hgmp/metrics.hpp"
#include "hgmp/mission_log.hpp"

namespace hgmp {

struct BaselineResult {
  MissionLog log;
  MetricsReport metrics;
};

// Single-type comparison team: hunters + gatherers agents that each explore,
// claim every task they sense, and complete their claims nearest first. Costs
// are weighted at rho_g; the log records the agents as gatherers.
BaselineResult run_baseline(const MissionConfig& config);

}  // namespace hgmp

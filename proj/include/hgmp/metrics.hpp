#pragma once

#include <vector>

#include "hgmp/mission_log.hpp"

namespace hgmp {

struct AgentMetrics {
  AgentId id = -1;
  int accomplished = 0;
  double cost = 0.0;
  double effectiveness = 0.0;
  bool zero_cost = false;  // effectiveness forced to 0
};

struct MetricsReport {
  std::vector<AgentMetrics> hunters;
  std::vector<AgentMetrics> gatherers;
  double hunter_cost = 0.0;    // unweighted sum over hunter ledgers
  double gatherer_cost = 0.0;  // unweighted sum over gatherer ledgers
  double collective_cost = 0.0;
  int completed = 0;
  double effectiveness = 0.0;
  bool zero_cost = false;
  std::vector<double> series;  // running effectiveness after each iteration 1..N
};

// Per-agent and mission effectiveness from the cost-bearing events of a log:
// detect events charge hunters, complete events charge and credit gatherers,
// agreements credit hunters.
MetricsReport compute_metrics(const MissionLog& log, double rho_h, double rho_g);
inline MetricsReport compute_metrics(const MissionLog& log) { return compute_metrics(log, log.rho_h, log.rho_g); }

}  // namespace hgmp

#include "hgmp/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace hgmp {

namespace {

void finish(AgentMetrics& m) {
  m.zero_cost = m.cost <= 0.0;
  m.effectiveness = m.zero_cost ? 0.0 : m.accomplished / m.cost;
}

}  // namespace

MetricsReport compute_metrics(const MissionLog& log, double rho_h, double rho_g) {
  MetricsReport report;
  report.hunters.resize(static_cast<std::size_t>(log.hunters));
  report.gatherers.resize(static_cast<std::size_t>(log.gatherers));
  for (int i = 0; i < log.hunters; ++i) report.hunters[static_cast<std::size_t>(i)].id = i;
  for (int j = 0; j < log.gatherers; ++j) report.gatherers[static_cast<std::size_t>(j)].id = j;
  report.series.assign(static_cast<std::size_t>(std::max(log.iterations, 0)), 0.0);

  auto agent = [](std::vector<AgentMetrics>& agents, AgentId id) -> AgentMetrics& {
    if (id < 0 || static_cast<std::size_t>(id) >= agents.size()) throw std::out_of_range("event actor out of range");
    return agents[static_cast<std::size_t>(id)];
  };

  std::size_t next = 0;
  auto running = [&] {
    const double c = rho_h * report.hunter_cost + rho_g * report.gatherer_cost;
    return c > 0.0 ? report.completed / c : 0.0;
  };
  for (const Event& e : log.events) {
    if (e.iteration > 0) {
      while (next + 1 < static_cast<std::size_t>(e.iteration) && next < report.series.size()) {
        report.series[next++] = running();
      }
    }
    switch (e.type) {
      case EventType::kDetect:
        if (e.role != Role::kHunter) break;
        agent(report.hunters, e.actor).cost += e.value;
        report.hunter_cost += e.value;
        break;
      case EventType::kAgreement:
        if (e.role != Role::kHunter) break;
        agent(report.hunters, e.actor).accomplished += 1;
        break;
      case EventType::kComplete: {
        AgentMetrics& g = agent(report.gatherers, e.actor);
        g.cost += e.value;
        g.accomplished += 1;
        report.gatherer_cost += e.value;
        report.completed += 1;
        break;
      }
      default:
        break;
    }
  }
  while (next < report.series.size()) report.series[next++] = running();

  for (AgentMetrics& h : report.hunters) finish(h);
  for (AgentMetrics& g : report.gatherers) finish(g);
  report.collective_cost = rho_h * report.hunter_cost + rho_g * report.gatherer_cost;
  report.zero_cost = report.collective_cost <= 0.0;
  report.effectiveness = report.zero_cost ? 0.0 : report.completed / report.collective_cost;
  return report;
}

}  // namespace hgmp

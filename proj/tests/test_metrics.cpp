#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgmp/metrics.hpp"

using namespace hgmp;

namespace {

MissionLog empty_log(int hunters, int gatherers, int iterations, double rho_h, double rho_g) {
  MissionLog log;
  log.hunters = hunters;
  log.gatherers = gatherers;
  log.iterations = iterations;
  log.rho_h = rho_h;
  log.rho_g = rho_g;
  return log;
}

Event event(int it, Role role, AgentId actor, EventType type, TaskId task, double value) {
  Event e;
  e.iteration = it;
  e.role = role;
  e.actor = actor;
  e.type = type;
  e.task = task;
  e.value = value;
  return e;
}

}  // namespace

TEST_CASE("ten tasks for a collective cost of 200") {
  MissionLog log = empty_log(1, 1, 10, 0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    log.add(event(k + 1, Role::kHunter, 0, EventType::kDetect, k, 5.0));
    log.add(event(k + 1, Role::kHunter, 0, EventType::kAgreement, k, 0.5));
    log.add(event(k + 1, Role::kGatherer, 0, EventType::kComplete, k, 20.0));
  }
  const MetricsReport m = compute_metrics(log);
  CHECK(m.completed == 10);
  CHECK(m.collective_cost == 200.0);
  CHECK(m.effectiveness == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(m.hunter_cost == 50.0);
  CHECK(m.hunters[0].effectiveness == doctest::Approx(0.2));
  CHECK(m.gatherers[0].effectiveness == doctest::Approx(0.05));

  const MetricsReport weighted = compute_metrics(log, 1.0, 1.0);
  CHECK(weighted.collective_cost == 250.0);
  CHECK(weighted.effectiveness == doctest::Approx(0.04));
}

TEST_CASE("per-agent effectiveness over three tasks") {
  MissionLog log = empty_log(1, 0, 3, 1.0, 1.0);
  const double costs[] = {10.0, 20.0, 30.0};
  for (int k = 0; k < 3; ++k) {
    log.add(event(k + 1, Role::kHunter, 0, EventType::kDetect, k, costs[k]));
    log.add(event(k + 1, Role::kHunter, 0, EventType::kAgreement, k, 0.5));
  }
  const MetricsReport m = compute_metrics(log);
  CHECK(m.hunters[0].accomplished == 3);
  CHECK(m.hunters[0].cost == 60.0);
  CHECK(m.hunters[0].effectiveness == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("zero cost is flagged and yields zero effectiveness") {
  MissionLog log = empty_log(2, 1, 4, 0.5, 1.0);
  const MetricsReport m = compute_metrics(log);
  CHECK(m.zero_cost);
  CHECK(m.effectiveness == 0.0);
  CHECK(m.hunters[1].zero_cost);
  CHECK(m.series == std::vector<double>(4, 0.0));
}

TEST_CASE("forgone and non-hunter events carry no credit") {
  MissionLog log = empty_log(1, 1, 2, 1.0, 1.0);
  log.add(event(1, Role::kHunter, 0, EventType::kForgo, 0, 7.0));
  log.add(event(1, Role::kGatherer, 0, EventType::kDetect, 1, 9.0));
  const MetricsReport m = compute_metrics(log);
  CHECK(m.hunter_cost == 0.0);
  CHECK(m.gatherer_cost == 0.0);
}

TEST_CASE("running series follows completions") {
  MissionLog log = empty_log(1, 1, 4, 0.0, 1.0);
  log.add(event(2, Role::kGatherer, 0, EventType::kComplete, 0, 4.0));
  log.add(event(4, Role::kGatherer, 0, EventType::kComplete, 1, 6.0));
  const MetricsReport m = compute_metrics(log);
  CHECK(m.series == std::vector<double>{0.0, 0.25, 0.25, 0.2});
  CHECK(m.series.back() == m.effectiveness);
}

TEST_CASE("out-of-range actors are rejected") {
  MissionLog log = empty_log(1, 1, 1, 1.0, 1.0);
  log.add(event(1, Role::kGatherer, 3, EventType::kComplete, 0, 1.0));
  CHECK_THROWS_AS(compute_metrics(log), std::out_of_range);
}

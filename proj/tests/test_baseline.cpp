#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgmp/baseline.hpp"

using namespace hgmp;

TEST_CASE("no tasks means zero effectiveness") {
  MissionConfig c;
  c.width = c.height = 30;
  c.live_tasks = 0;
  c.iterations = 50;
  const BaselineResult r = run_baseline(c);
  CHECK(r.metrics.completed == 0);
  CHECK(r.metrics.effectiveness == 0.0);
  CHECK(r.log.final_agents.size() == 6);
}

TEST_CASE("an adjacent task is claimed, walked to and completed at cost one") {
  MissionConfig c;
  c.width = c.height = 21;
  c.hunters = 1;
  c.gatherers = 1;
  c.placement = Placement::kDepot;
  c.perpetual = false;
  c.iterations = 5;
  c.tasks = {{10, 11}};
  c.live_tasks = 1;
  const BaselineResult r = run_baseline(c);
  CHECK(r.metrics.completed == 1);
  CHECK(r.metrics.gatherer_cost == 1.0);
  CHECK(r.metrics.effectiveness == 1.0);
  CHECK(r.metrics.gatherers[0].accomplished == 1);
  CHECK(r.metrics.gatherers[1].accomplished == 0);
}

TEST_CASE("baseline is deterministic and completes tasks at defaults") {
  MissionConfig c;
  c.log_moves = false;
  c.iterations = 300;
  const BaselineResult a = run_baseline(c);
  const BaselineResult b = run_baseline(c);
  CHECK(a.log.to_csv() == b.log.to_csv());
  CHECK(a.metrics.completed > 0);
  for (const Event& e : a.log.events) CHECK(e.role == Role::kGatherer);
}

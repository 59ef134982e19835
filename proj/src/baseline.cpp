#include "hgmp/baseline.hpp"

#include <algorithm>
#include <optional>

#include "hgmp/engine.hpp"
#include "hgmp/planning.hpp"
#include "hgmp/world.hpp"

namespace hgmp {

namespace {

struct Agent {
  AgentId id = -1;
  Cell position;
  double odometer = 0.0;
  double odometer_at_completion = 0.0;
  std::vector<TaskId> claims;
  std::optional<TaskId> heading;
  std::optional<FrontierTarget> target;
  std::size_t path_step = 0;
};

}  // namespace

BaselineResult run_baseline(const MissionConfig& config) {
  config.validate();
  GridWorld world = make_world(config);
  Rng rng(config.seed);
  DistanceFieldCache fields;

  MissionLog log;
  log.hunters = 0;
  log.gatherers = config.hunters + config.gatherers;
  log.iterations = config.iterations;
  log.rho_h = config.rho_h;
  log.rho_g = config.rho_g;
  auto record = [&](const Event& e) {
    if (e.type == EventType::kMove && !config.log_moves) return;
    log.add(e);
  };

  // Same draw order as the two-type mission: hunter starts, gatherer starts.
  std::vector<Agent> agents;
  const auto first = place_agents(world, config.placement, static_cast<std::size_t>(config.hunters), rng);
  const auto second = place_agents(world, config.placement, static_cast<std::size_t>(config.gatherers), rng);
  for (const auto* starts : {&first, &second}) {
    for (const Cell c : *starts) {
      Agent a;
      a.id = static_cast<AgentId>(agents.size());
      a.position = c;
      agents.push_back(std::move(a));
    }
  }

  auto spawn = [&](int iteration) {
    const PopulationResult r = maintain_population(world, static_cast<std::size_t>(config.live_tasks), rng);
    const std::size_t first_fallback = r.spawned.size() - r.fallbacks;
    for (std::size_t i = 0; i < r.spawned.size(); ++i) {
      record({iteration, Role::kGatherer, -1, EventType::kSpawn, r.spawned[i], -1, world.task(r.spawned[i]).location,
              0.0, i >= first_fallback ? 1.0 : 0.0});
    }
  };
  if (!config.tasks.empty()) {
    for (const Cell c : config.tasks) {
      const TaskId id = world.add_task(c);
      record({0, Role::kGatherer, -1, EventType::kSpawn, id, -1, c, 0.0, 0.0});
    }
  } else {
    spawn(0);
  }

  for (int it = 1; it <= config.iterations; ++it) {
    world.set_iteration(it);
    if (config.perpetual) decay_knowledge(world, config.forget_after);

    for (Agent& a : agents) {
      if (!a.heading && !a.claims.empty()) {
        // Nearest claim by grid distance, lowest id on ties.
        GridDistance best = kUnreachable;
        for (const TaskId t : a.claims) {
          const GridDistance d = fields.distance(world, a.position, world.task(t).location);
          if (d < best || (d == best && (!a.heading || t < *a.heading))) {
            best = d;
            a.heading = t;
          }
        }
      }

      std::optional<Cell> next;
      if (a.heading) {
        const Cell goal = world.task(*a.heading).location;
        if (a.position != goal) next = fields.field(world, goal).step_toward(world, a.position);
      } else {
        if (a.target && (a.path_step >= a.target->path.size() || !is_frontier(world, a.target->cell))) a.target.reset();
        if (!a.target) {
          a.target = next_frontier_target(world, a.position);
          a.path_step = 0;
        }
        if (a.target && a.path_step < a.target->path.size()) next = a.target->path[a.path_step++];
      }
      if (next) {
        a.position = *next;
        a.odometer += 1.0;
        record({it, Role::kGatherer, a.id, EventType::kMove, -1, -1, a.position, a.odometer, 0.0});
      }

      for (const TaskId id : sense(world, a.position, config.sensor_radius).detected) {
        if (world.task(id).detected_by) continue;
        world.claim_task(id, a.id, it);
        world.announce_task(id);
        world.assign_task(id, a.id, Shares{0.0, 1.0});
        a.claims.push_back(id);
        record({it, Role::kGatherer, a.id, EventType::kDetect, id, -1, world.task(id).location, 0.0, 0.0});
      }

      if (a.heading && world.task(*a.heading).location == a.position) {
        const TaskId done = *a.heading;
        const double cost = a.odometer - a.odometer_at_completion;
        a.odometer_at_completion = a.odometer;
        world.complete_task(done, it);
        fields.evict(world, a.position);
        std::erase(a.claims, done);
        a.heading.reset();
        a.target.reset();
        record({it, Role::kGatherer, a.id, EventType::kComplete, done, -1, a.position, cost, 1.0});
      }
    }
    if (config.perpetual) spawn(it);
  }

  for (const Agent& a : agents) {
    int done = 0;
    double charged = 0.0;
    for (const Event& e : log.events) {
      if (e.type == EventType::kComplete && e.actor == a.id) {
        ++done;
        charged += e.value;
      }
    }
    log.final_agents.push_back({Role::kGatherer, a.id, a.position, a.odometer, done, charged});
  }
  BaselineResult result;
  result.metrics = compute_metrics(log);
  result.log = std::move(log);
  return result;
}

}  // namespace hgmp

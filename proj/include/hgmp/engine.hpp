#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hgmp/config.hpp"
#include "hgmp/metrics.hpp"
#include "hgmp/mission_log.hpp"
#include "hgmp/negotiation.hpp"
#include "hgmp/planning.hpp"
#include "hgmp/rng.hpp"
#include "hgmp/world.hpp"

namespace hgmp {

struct LedgerEntry {
  TaskId task = -1;
  double cost = 0.0;
  bool forgone = false;  // hunter dropped the detection as unprofitable
};

struct HunterState {
  AgentId id = -1;
  Cell position;
  bool hold = false;
  std::optional<TaskId> detected_task;
  double odometer = 0.0;
  double odometer_at_detection = 0.0;
  int tasks_hunted = 0;
  std::vector<LedgerEntry> cost_ledger;
  std::vector<TaskId> ignored;  // forgone detections, never claimed again
  std::optional<FrontierTarget> target;
  std::size_t path_step = 0;
};

struct GathererState {
  AgentId id = -1;
  Cell position;
  ActionPlan plan;
  double odometer = 0.0;
  double odometer_at_completion = 0.0;
  int tasks_gathered = 0;
  std::vector<LedgerEntry> cost_ledger;
};

// Everything needed to re-check one negotiation after the fact.
struct NegotiationRecord {
  int iteration = 0;
  AgentId hunter = -1;
  TaskId task = -1;
  double hunter_cost = 0.0;
  std::vector<BidderProfile> gatherers;  // cost = tentative route cost at readiness
  NegotiationOutcome outcome;
};

struct MissionResult {
  MissionLog log;
  MetricsReport metrics;
  std::vector<NegotiationRecord> negotiations;
  std::vector<HunterState> hunters;
  std::vector<GathererState> gatherers;
  std::size_t spawn_fallbacks = 0;
  std::size_t max_plan_size = 0;
};

// One hunter/gatherer mission. Each step() runs a full iteration: decay and
// hunter exploration, announcements, gatherer partner choice, negotiation per
// hunter, gatherer movement and completions, then respawn.
class Mission {
 public:
  explicit Mission(const MissionConfig& config);

  void step();
  bool finished() const { return iteration_ >= config_.iterations; }
  int iteration() const { return iteration_; }
  MissionResult finish();

  const MissionConfig& config() const { return config_; }
  const GridWorld& world() const { return world_; }
  const OnlineBoard& board() const { return board_; }
  const std::vector<HunterState>& hunters() const { return hunters_; }
  const std::vector<GathererState>& gatherers() const { return gatherers_; }
  const MissionLog& log() const { return log_; }
  const std::vector<NegotiationRecord>& negotiations() const { return negotiations_; }

 private:
  struct Readiness {
    AgentId gatherer;
    Candidate candidate;
  };

  GridDistance distance(Cell from, Cell to);
  void hunter_explore(HunterState& hunter);
  void hunter_sense(HunterState& hunter);
  void announce();
  std::vector<std::vector<Readiness>> collect_readiness();
  void negotiate(HunterState& hunter, std::vector<Readiness>& readiness);
  void gatherer_advance(GathererState& gatherer);
  void respawn();
  void log_event(const Event& event);

  MissionConfig config_;
  MarginParams hunter_params_;
  MarginParams gatherer_params_;
  GridWorld world_;
  Rng rng_;
  OnlineBoard board_;
  DistanceFieldCache fields_;
  std::vector<HunterState> hunters_;
  std::vector<GathererState> gatherers_;
  MissionLog log_;
  std::vector<NegotiationRecord> negotiations_;
  int iteration_ = 0;
  std::size_t spawn_fallbacks_ = 0;
  std::size_t max_plan_size_ = 0;
};

MissionResult run_mission(const MissionConfig& config);

// Builds the world a config describes (map file or empty grid).
GridWorld make_world(const MissionConfig& config);

// Start cells for `count` agents under the config's placement rule.
std::vector<Cell> place_agents(const GridWorld& world, Placement placement, std::size_t count, Rng& rng);

}  // namespace hgmp

#include "hgmp/engine.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace hgmp {

GridWorld make_world(const MissionConfig& config) {
  if (!config.map_file.empty()) return GridWorld::load_map(config.map_file);
  return GridWorld(config.width, config.height);
}

std::vector<Cell> place_agents(const GridWorld& world, Placement placement, std::size_t count, Rng& rng) {
  std::vector<Cell> free_cells;
  for (std::size_t i = 0; i < world.cell_count(); ++i) {
    if (world.is_free(world.cell_at(i))) free_cells.push_back(world.cell_at(i));
  }
  if (free_cells.empty()) throw std::invalid_argument("map has no free cell to place agents on");

  std::vector<Cell> starts;
  if (placement == Placement::kRandom) {
    for (std::size_t a = 0; a < count; ++a) starts.push_back(free_cells[rng.uniform_index(free_cells.size())]);
    return starts;
  }
  const Cell centre{world.height() / 2, world.width() / 2};
  const auto nearest = std::min_element(free_cells.begin(), free_cells.end(), [&](Cell a, Cell b) {
    const int da = manhattan(a, centre);
    const int db = manhattan(b, centre);
    return da != db ? da < db : a < b;
  });
  starts.assign(count, *nearest);
  return starts;
}

Mission::Mission(const MissionConfig& config)
    : config_(config),
      hunter_params_(config.hunter_params()),
      gatherer_params_(config.gatherer_params()),
      world_(make_world(config)),
      rng_(config.seed) {
  config_.validate();
  log_.hunters = config.hunters;
  log_.gatherers = config.gatherers;
  log_.iterations = config.iterations;
  log_.rho_h = config.rho_h;
  log_.rho_g = config.rho_g;

  const auto hunter_starts = place_agents(world_, config.placement, static_cast<std::size_t>(config.hunters), rng_);
  const auto gatherer_starts =
      place_agents(world_, config.placement, static_cast<std::size_t>(config.gatherers), rng_);
  for (int i = 0; i < config.hunters; ++i) {
    HunterState h;
    h.id = i;
    h.position = hunter_starts[static_cast<std::size_t>(i)];
    hunters_.push_back(std::move(h));
  }
  for (int j = 0; j < config.gatherers; ++j) {
    GathererState g;
    g.id = j;
    g.position = gatherer_starts[static_cast<std::size_t>(j)];
    gatherers_.push_back(std::move(g));
  }

  if (!config.tasks.empty()) {
    for (const Cell c : config.tasks) {
      const TaskId id = world_.add_task(c);
      log_event({0, Role::kHunter, -1, EventType::kSpawn, id, -1, c, 0.0, 0.0});
    }
  } else {
    respawn();
  }
}

GridDistance Mission::distance(Cell from, Cell to) { return fields_.distance(world_, from, to); }

void Mission::log_event(const Event& event) {
  if (event.type == EventType::kMove && !config_.log_moves) return;
  log_.add(event);
}

void Mission::step() {
  if (finished()) return;
  ++iteration_;
  world_.set_iteration(iteration_);
  if (config_.perpetual) decay_knowledge(world_, config_.forget_after);

  for (HunterState& h : hunters_) {
    if (h.hold) continue;
    hunter_explore(h);
    hunter_sense(h);
  }
  announce();
  auto readiness = collect_readiness();
  for (HunterState& h : hunters_) {
    auto& messages = readiness[static_cast<std::size_t>(h.id)];
    if (!messages.empty()) negotiate(h, messages);
  }
  for (GathererState& g : gatherers_) gatherer_advance(g);
  if (config_.perpetual) respawn();
}

void Mission::hunter_explore(HunterState& h) {
  if (h.target && (h.path_step >= h.target->path.size() || !is_frontier(world_, h.target->cell))) h.target.reset();
  if (!h.target) {
    h.target = next_frontier_target(world_, h.position);
    h.path_step = 0;
  }
  if (!h.target || h.path_step >= h.target->path.size()) return;
  h.position = h.target->path[h.path_step++];
  h.odometer += 1.0;
  log_event({iteration_, Role::kHunter, h.id, EventType::kMove, -1, -1, h.position, h.odometer, 0.0});
}

void Mission::hunter_sense(HunterState& h) {
  const SenseResult sensed = sense(world_, h.position, config_.sensor_radius);
  std::optional<TaskId> pick;
  for (const TaskId id : sensed.detected) {
    if (world_.task(id).detected_by) continue;
    if (std::find(h.ignored.begin(), h.ignored.end(), id) != h.ignored.end()) continue;
    if (!pick) {
      pick = id;
      continue;
    }
    const int d_new = manhattan(world_.task(id).location, h.position);
    const int d_old = manhattan(world_.task(*pick).location, h.position);
    if (d_new < d_old || (d_new == d_old && id < *pick)) pick = id;
  }
  if (!pick) return;

  const Task& task = world_.task(*pick);
  const double cost = h.odometer - h.odometer_at_detection;
  h.odometer_at_detection = h.odometer;
  world_.claim_task(*pick, h.id, iteration_);
  h.cost_ledger.push_back({*pick, cost, false});
  log_event({iteration_, Role::kHunter, h.id, EventType::kDetect, *pick, -1, task.location, cost, 0.0});

  if (classify_state(cost, hunter_params_) == MarginState::kUnprofitable) {
    world_.release_claim(*pick);
    h.ignored.push_back(*pick);
    h.cost_ledger.back().forgone = true;
    log_event({iteration_, Role::kHunter, h.id, EventType::kForgo, *pick, -1, task.location, cost, 0.0});
    return;
  }
  h.hold = true;
  h.detected_task = *pick;
  h.target.reset();
}

void Mission::announce() {
  for (const HunterState& h : hunters_) {
    if (!h.hold || board_.has(h.id)) continue;
    const Task& task = world_.task(*h.detected_task);
    world_.announce_task(task.id);
    board_.announce({h.id, task.id, task.location, iteration_});
    log_event({iteration_, Role::kHunter, h.id, EventType::kAnnounce, task.id, -1, task.location, 0.0, 0.0});
  }
}

std::vector<std::vector<Mission::Readiness>> Mission::collect_readiness() {
  std::vector<std::vector<Readiness>> readiness(hunters_.size());
  if (board_.empty()) return readiness;
  const std::vector<Announcement> waiting = board_.waiting();
  const DistanceFn dist = [this](Cell a, Cell b) { return distance(a, b); };
  for (const GathererState& g : gatherers_) {
    auto candidate = choose_partner(g.position, g.plan, waiting, gatherer_params_,
                                    static_cast<std::size_t>(config_.q_max), dist);
    if (!candidate) continue;
    const Announcement& a = candidate->announcement;
    log_event({iteration_, Role::kGatherer, g.id, EventType::kReadiness, a.task, a.hunter, a.location,
               candidate->temp_cost, 0.0});
    readiness[static_cast<std::size_t>(a.hunter)].push_back({g.id, std::move(*candidate)});
  }
  return readiness;
}

void Mission::negotiate(HunterState& h, std::vector<Readiness>& messages) {
  const TaskId task_id = *h.detected_task;
  const Cell location = world_.task(task_id).location;
  NegotiationRecord record;
  record.iteration = iteration_;
  record.hunter = h.id;
  record.task = task_id;
  record.hunter_cost = h.cost_ledger.back().cost;
  for (const Readiness& r : messages) record.gatherers.push_back({r.gatherer, r.candidate.temp_cost, gatherer_params_});

  const ProfitInterval hunter_interval = profit_interval(record.hunter_cost, hunter_params_);
  if (messages.size() == 1) {
    const ProfitInterval gi = profit_interval(messages.front().candidate.temp_cost, gatherer_params_);
    record.outcome = bargain(hunter_interval, messages.front().gatherer, gi, rng_);
  } else {
    std::vector<Bid> bids;
    for (const Readiness& r : messages) {
      bids.push_back(place_bid(r.gatherer, task_id, profit_interval(r.candidate.temp_cost, gatherer_params_)));
    }
    record.outcome = run_auction(bids, hunter_interval, rng_);
  }

  for (const NegotiationMessage& m : record.outcome.transcript) {
    switch (m.kind) {
      case MessageKind::kOffer:
        log_event({iteration_, Role::kHunter, h.id, EventType::kOffer, task_id, m.gatherer, location, m.share, 0.0});
        break;
      case MessageKind::kAccept:
      case MessageKind::kReject:
      case MessageKind::kBid: {
        const EventType type = m.kind == MessageKind::kAccept   ? EventType::kAccept
                               : m.kind == MessageKind::kReject ? EventType::kReject
                                                                : EventType::kBid;
        log_event({iteration_, Role::kGatherer, m.gatherer, type, task_id, h.id, location, m.share, 0.0});
        break;
      }
    }
  }

  if (record.outcome.succeeded()) {
    const Agreement& deal = *record.outcome.agreement;
    world_.assign_task(task_id, deal.gatherer, deal.shares);
    board_.withdraw(h.id);
    h.hold = false;
    h.detected_task.reset();
    h.tasks_hunted += 1;
    log_event({iteration_, Role::kHunter, h.id, EventType::kAgreement, task_id, deal.gatherer, location,
               deal.shares.hunter, deal.shares.gatherer});
    for (const Readiness& r : messages) {
      if (r.gatherer != deal.gatherer) continue;
      GathererState& g = gatherers_[static_cast<std::size_t>(r.gatherer)];
      g.plan = commit_candidate(r.candidate, deal.shares.gatherer);
      max_plan_size_ = std::max(max_plan_size_, g.plan.size());
    }
  } else {
    log_event({iteration_, Role::kHunter, h.id, EventType::kNegotiationFailed, task_id, -1, location, 0.0,
               static_cast<double>(messages.size())});
  }
  negotiations_.push_back(std::move(record));
}

void Mission::gatherer_advance(GathererState& g) {
  std::optional<Cell> goal;
  if (!g.plan.empty()) {
    goal = g.plan.entries.front().location;
  } else if (config_.idle_drift && !board_.empty()) {
    goal = board_.waiting().front().location;
  }
  if (goal && g.position != *goal) {
    if (const auto next = fields_.field(world_, *goal).step_toward(world_, g.position)) {
      g.position = *next;
      g.odometer += 1.0;
      log_event({iteration_, Role::kGatherer, g.id, EventType::kMove, -1, -1, g.position, g.odometer, 0.0});
    }
  }

  bool completed = false;
  while (!g.plan.empty() && g.plan.entries.front().location == g.position) {
    const PlanEntry entry = g.plan.entries.front();
    const double cost = g.odometer - g.odometer_at_completion;
    g.odometer_at_completion = g.odometer;
    world_.complete_task(entry.task, iteration_);
    g.tasks_gathered += 1;
    g.cost_ledger.push_back({entry.task, cost, false});
    log_event({iteration_, Role::kGatherer, g.id, EventType::kComplete, entry.task, entry.hunter, entry.location,
               cost, entry.share});
    fields_.evict(world_, entry.location);
    g.plan.entries.erase(g.plan.entries.begin());
    completed = true;
  }
  if (completed) replan(g.plan, g.position, [this](Cell a, Cell b) { return distance(a, b); });
}

void Mission::respawn() {
  const PopulationResult spawned =
      maintain_population(world_, static_cast<std::size_t>(config_.live_tasks), rng_);
  spawn_fallbacks_ += spawned.fallbacks;
  const std::size_t first_fallback = spawned.spawned.size() - spawned.fallbacks;
  for (std::size_t i = 0; i < spawned.spawned.size(); ++i) {
    const TaskId id = spawned.spawned[i];
    log_event({iteration_, Role::kHunter, -1, EventType::kSpawn, id, -1, world_.task(id).location, 0.0,
               i >= first_fallback ? 1.0 : 0.0});
  }
}

MissionResult Mission::finish() {
  while (!finished()) step();
  log_.final_agents.clear();
  for (const HunterState& h : hunters_) {
    double charged = 0.0;
    for (const LedgerEntry& e : h.cost_ledger) charged += e.cost;
    log_.final_agents.push_back({Role::kHunter, h.id, h.position, h.odometer, h.tasks_hunted, charged});
  }
  for (const GathererState& g : gatherers_) {
    double charged = 0.0;
    for (const LedgerEntry& e : g.cost_ledger) charged += e.cost;
    log_.final_agents.push_back({Role::kGatherer, g.id, g.position, g.odometer, g.tasks_gathered, charged});
  }
  MissionResult result;
  result.metrics = compute_metrics(log_);
  result.log = log_;
  result.negotiations = negotiations_;
  result.hunters = hunters_;
  result.gatherers = gatherers_;
  result.spawn_fallbacks = spawn_fallbacks_;
  result.max_plan_size = max_plan_size_;
  return result;
}

MissionResult run_mission(const MissionConfig& config) {
  Mission mission(config);
  return mission.finish();
}

}  // namespace hgmp

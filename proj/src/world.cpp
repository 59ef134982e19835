#include "hgmp/world.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace hgmp {

std::string_view to_string(TaskPhase phase) {
  switch (phase) {
    case TaskPhase::kHidden: return "hidden";
    case TaskPhase::kAnnounced: return "announced";
    case TaskPhase::kAssigned: return "assigned";
    case TaskPhase::kCompleted: return "completed";
  }
  return "?";
}

GridWorld::GridWorld(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("grid dimensions must be positive");
  const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  obstacles_.assign(n, 0);
  last_seen_.assign(n, kUnknown);
  task_at_.assign(n, -1);
}

GridWorld GridWorld::from_rows(std::span<const std::string> rows) {
  if (rows.empty()) throw std::invalid_argument("map has no rows");
  const std::size_t width = rows.front().size();
  if (width == 0) throw std::invalid_argument("map rows are empty");
  GridWorld world(static_cast<int>(width), static_cast<int>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw std::invalid_argument("map row " + std::to_string(r) + " has length " + std::to_string(rows[r].size()) +
                                  ", expected " + std::to_string(width));
    }
    for (std::size_t c = 0; c < width; ++c) {
      const char ch = rows[r][c];
      if (ch == '#') {
        world.set_obstacle(Cell{static_cast<int>(r), static_cast<int>(c)}, true);
      } else if (ch != '.') {
        throw std::invalid_argument("map row " + std::to_string(r) + " has invalid character '" + ch + "'");
      }
    }
  }
  return world;
}

GridWorld GridWorld::load_map(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open map file " + file.string());
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(line);
  }
  return from_rows(rows);
}

void GridWorld::set_obstacle(Cell c, bool blocked) {
  if (!in_bounds(c)) throw std::out_of_range("cell outside grid");
  if (blocked && task_at_[index(c)] >= 0) throw std::logic_error("cannot place obstacle on a task");
  obstacles_[index(c)] = blocked ? 1 : 0;
}

std::size_t GridWorld::free_cell_count() const {
  return static_cast<std::size_t>(std::count(obstacles_.begin(), obstacles_.end(), std::uint8_t{0}));
}

std::optional<int> GridWorld::last_seen(Cell c) const {
  const int seen = last_seen_[index(c)];
  if (seen == kUnknown) return std::nullopt;
  return seen;
}

std::size_t GridWorld::explored_count() const {
  return static_cast<std::size_t>(
      std::count_if(last_seen_.begin(), last_seen_.end(), [](int s) { return s != kUnknown; }));
}

TaskId GridWorld::add_task(Cell location) {
  if (!is_free(location)) throw std::invalid_argument("task location must be a free cell");
  if (task_at_[index(location)] >= 0) throw std::invalid_argument("cell already holds a live task");
  Task task;
  task.id = static_cast<TaskId>(tasks_.size());
  task.location = location;
  task_at_[index(location)] = task.id;
  tasks_.push_back(std::move(task));
  ++active_tasks_;
  return tasks_.back().id;
}

std::optional<TaskId> GridWorld::task_at(Cell c) const {
  if (!in_bounds(c)) return std::nullopt;
  const TaskId id = task_at_[index(c)];
  if (id < 0) return std::nullopt;
  return id;
}

void GridWorld::advance_phase(Task& task, TaskPhase from, TaskPhase to) {
  if (task.phase != from) {
    throw std::logic_error("task " + std::to_string(task.id) + " cannot move from " + std::string(to_string(task.phase)) +
                           " to " + std::string(to_string(to)));
  }
  task.phase = to;
  task.history.push_back(to);
}

void GridWorld::claim_task(TaskId id, AgentId hunter, int iteration) {
  Task& task = mutable_task(id);
  if (task.phase != TaskPhase::kHidden) throw std::logic_error("only hidden tasks can be claimed");
  if (task.detected_by) throw std::logic_error("task already claimed");
  task.detected_by = hunter;
  task.detected_at = iteration;
}

void GridWorld::release_claim(TaskId id) {
  Task& task = mutable_task(id);
  if (task.phase != TaskPhase::kHidden) throw std::logic_error("announced tasks cannot be released");
  task.detected_by.reset();
  task.detected_at.reset();
}

void GridWorld::announce_task(TaskId id) {
  Task& task = mutable_task(id);
  if (!task.detected_by) throw std::logic_error("announcing a task nobody detected");
  advance_phase(task, TaskPhase::kHidden, TaskPhase::kAnnounced);
}

void GridWorld::assign_task(TaskId id, AgentId gatherer, Shares shares) {
  Task& task = mutable_task(id);
  advance_phase(task, TaskPhase::kAnnounced, TaskPhase::kAssigned);
  task.assigned_to = gatherer;
  task.shares = shares;
}

void GridWorld::complete_task(TaskId id, int iteration) {
  Task& task = mutable_task(id);
  advance_phase(task, TaskPhase::kAssigned, TaskPhase::kCompleted);
  task.completed_at = iteration;
  task_at_[index(task.location)] = -1;
  --active_tasks_;
}

std::optional<Path> shortest_path(const GridWorld& world, Cell start, Cell goal) {
  if (!world.is_free(start) || !world.is_free(goal)) return std::nullopt;
  if (start == goal) return Path{{start}, 0};

  const std::size_t n = world.cell_count();
  std::vector<GridDistance> g(n, kUnreachable);
  std::vector<std::int32_t> parent(n, -1);
  std::vector<std::uint8_t> closed(n, 0);

  // (f, -g, index): among equal f prefer the deeper node, which keeps the
  // search on a straight corridor in open terrain.
  using Entry = std::tuple<GridDistance, GridDistance, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  const std::size_t s = world.index(start);
  const std::size_t t = world.index(goal);
  g[s] = 0;
  open.emplace(manhattan(start, goal), 0, s);

  while (!open.empty()) {
    const auto [f, neg_g, u] = open.top();
    open.pop();
    if (closed[u]) continue;
    closed[u] = 1;
    if (u == t) break;
    const Cell cu = world.cell_at(u);
    for (const Cell nb : neighbours(cu)) {
      if (!world.is_free(nb)) continue;
      const std::size_t v = world.index(nb);
      if (closed[v]) continue;
      const GridDistance cand = g[u] + 1;
      if (cand < g[v]) {
        g[v] = cand;
        parent[v] = static_cast<std::int32_t>(u);
        open.emplace(cand + manhattan(nb, goal), -cand, v);
      }
    }
  }
  if (g[t] == kUnreachable) return std::nullopt;

  Path path;
  path.total_cost = g[t];
  for (std::int64_t v = static_cast<std::int64_t>(t); v >= 0; v = parent[static_cast<std::size_t>(v)]) {
    path.cells.push_back(world.cell_at(static_cast<std::size_t>(v)));
    if (static_cast<std::size_t>(v) == s) break;
  }
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

DistanceMatrix pairwise_distances(std::span<const Cell> points, const GridWorld& world) {
  DistanceMatrix m(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const auto path = shortest_path(world, points[i], points[j]);
      m.set(i, j, path ? path->total_cost : kUnreachable);
    }
  }
  return m;
}

SenseResult sense(GridWorld& world, Cell position, int radius) {
  SenseResult result;
  if (radius < 0) return result;
  for (int r = position.row - radius; r <= position.row + radius; ++r) {
    for (int c = position.col - radius; c <= position.col + radius; ++c) {
      const Cell cell{r, c};
      if (!world.is_free(cell)) continue;
      world.mark_explored(cell);
      ++result.explored;
      if (const auto id = world.task_at(cell); id && world.task(*id).phase == TaskPhase::kHidden) {
        result.detected.push_back(*id);
      }
    }
  }
  return result;
}

PopulationResult maintain_population(GridWorld& world, std::size_t target_active, Rng& rng) {
  PopulationResult result;
  const std::size_t n = world.cell_count();
  auto eligible = [&](Cell c, bool require_unknown) {
    return world.is_free(c) && !world.task_at(c) && (!require_unknown || !world.is_explored(c));
  };

  while (world.active_task_count() < target_active) {
    std::optional<Cell> chosen;
    // Rejection sampling is uniform over eligible cells; enumerate only when
    // eligible cells are scarce.
    for (int attempt = 0; attempt < 64 && !chosen; ++attempt) {
      const Cell c = world.cell_at(rng.uniform_index(n));
      if (eligible(c, true)) chosen = c;
    }
    if (!chosen) {
      std::vector<Cell> pool;
      for (std::size_t i = 0; i < n; ++i) {
        if (eligible(world.cell_at(i), true)) pool.push_back(world.cell_at(i));
      }
      if (pool.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
          if (eligible(world.cell_at(i), false)) pool.push_back(world.cell_at(i));
        }
        if (pool.empty()) break;
        ++result.fallbacks;
      }
      chosen = pool[rng.uniform_index(pool.size())];
    }
    result.spawned.push_back(world.add_task(*chosen));
  }
  return result;
}

std::size_t decay_knowledge(GridWorld& world, int forget_after) {
  if (forget_after == kNeverForget) return 0;
  if (forget_after <= 0) throw std::invalid_argument("forget_after must be positive");
  std::size_t forgotten = 0;
  const int now = world.iteration();
  for (std::size_t i = 0; i < world.cell_count(); ++i) {
    const Cell c = world.cell_at(i);
    const auto seen = world.last_seen(c);
    if (seen && static_cast<long long>(now) - *seen >= forget_after) {
      world.forget(c);
      ++forgotten;
    }
  }
  return forgotten;
}

DistanceField::DistanceField(const GridWorld& world, Cell goal)
    : goal_(goal), dist_(world.cell_count(), kUnreachable) {
  if (!world.is_free(goal)) return;
  std::deque<std::size_t> frontier;
  dist_[world.index(goal)] = 0;
  frontier.push_back(world.index(goal));
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop_front();
    for (const Cell nb : neighbours(world.cell_at(u))) {
      if (!world.is_free(nb)) continue;
      const std::size_t v = world.index(nb);
      if (dist_[v] != kUnreachable) continue;
      dist_[v] = dist_[u] + 1;
      frontier.push_back(v);
    }
  }
}

std::optional<Cell> DistanceField::step_toward(const GridWorld& world, Cell from) const {
  const GridDistance here = at(world, from);
  if (here == kUnreachable || here == 0) return std::nullopt;
  for (const Cell nb : neighbours(from)) {
    if (world.is_free(nb) && at(world, nb) == here - 1) return nb;
  }
  return std::nullopt;
}

const DistanceField& DistanceFieldCache::field(const GridWorld& world, Cell goal) {
  const std::size_t key = world.index(goal);
  auto it = fields_.find(key);
  if (it == fields_.end()) it = fields_.emplace(key, DistanceField(world, goal)).first;
  return it->second;
}

}  // namespace hgmp

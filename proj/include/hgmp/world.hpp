#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hgmp/rng.hpp"
#include "hgmp/types.hpp"

namespace hgmp {

enum class TaskPhase : std::uint8_t { kHidden, kAnnounced, kAssigned, kCompleted };

std::string_view to_string(TaskPhase phase);

struct Task {
  TaskId id = -1;
  Cell location;
  TaskPhase phase = TaskPhase::kHidden;
  std::optional<AgentId> detected_by;
  std::optional<AgentId> assigned_to;
  std::optional<Shares> shares;
  std::optional<int> detected_at;
  std::optional<int> completed_at;
  // Every phase the task has been in, starting with kHidden.
  std::vector<TaskPhase> history{TaskPhase::kHidden};
};

struct Path {
  std::vector<Cell> cells;
  GridDistance total_cost = 0;
};

// Knowledge never decays when forget_after equals this value.
inline constexpr int kNeverForget = std::numeric_limits<int>::max();

// Occupancy grid with the live task population and the team's shared
// exploration map. Single writer: only the mission engine mutates it.
class GridWorld {
 public:
  GridWorld(int width, int height);

  // Rows of '.' (free) and '#' (obstacle); all rows must have equal length.
  static GridWorld from_rows(std::span<const std::string> rows);
  static GridWorld load_map(const std::filesystem::path& file);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t cell_count() const { return obstacles_.size(); }

  bool in_bounds(Cell c) const { return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_; }
  bool is_free(Cell c) const { return in_bounds(c) && obstacles_[index(c)] == 0; }
  void set_obstacle(Cell c, bool blocked);
  std::size_t free_cell_count() const;

  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.row) * width_ + c.col; }
  Cell cell_at(std::size_t i) const {
    return Cell{static_cast<int>(i / width_), static_cast<int>(i % width_)};
  }

  int iteration() const { return iteration_; }
  void set_iteration(int iteration) { iteration_ = iteration; }

  bool is_explored(Cell c) const { return last_seen_[index(c)] != kUnknown; }
  std::optional<int> last_seen(Cell c) const;
  void mark_explored(Cell c) { last_seen_[index(c)] = iteration_; }
  void forget(Cell c) { last_seen_[index(c)] = kUnknown; }
  std::size_t explored_count() const;

  TaskId add_task(Cell location);
  const Task& task(TaskId id) const { return tasks_.at(static_cast<std::size_t>(id)); }
  const std::vector<Task>& tasks() const { return tasks_; }
  // The live (not completed) task on a cell, if any.
  std::optional<TaskId> task_at(Cell c) const;
  std::size_t active_task_count() const { return active_tasks_; }

  // Phase transitions. Each throws std::logic_error when the transition
  // would break hidden -> announced -> assigned -> completed.
  void claim_task(TaskId id, AgentId hunter, int iteration);
  void release_claim(TaskId id);
  void announce_task(TaskId id);
  void assign_task(TaskId id, AgentId gatherer, Shares shares);
  void complete_task(TaskId id, int iteration);

 private:
  static constexpr int kUnknown = std::numeric_limits<int>::min();

  Task& mutable_task(TaskId id) { return tasks_.at(static_cast<std::size_t>(id)); }
  void advance_phase(Task& task, TaskPhase from, TaskPhase to);

  int width_;
  int height_;
  int iteration_ = 0;
  std::vector<std::uint8_t> obstacles_;
  std::vector<int> last_seen_;
  std::vector<TaskId> task_at_;
  std::vector<Task> tasks_;
  std::size_t active_tasks_ = 0;
};

// Minimal-cost path under 4-connected unit-cost movement (A*), or nullopt
// when the goal cannot be reached.
std::optional<Path> shortest_path(const GridWorld& world, Cell start, Cell goal);

// Symmetric matrix of shortest-path distances, kUnreachable for pairs in
// different connected components.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0) {}

  std::size_t size() const { return n_; }
  GridDistance at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, GridDistance d) {
    d_[i * n_ + j] = d;
    d_[j * n_ + i] = d;
  }

 private:
  std::size_t n_ = 0;
  std::vector<GridDistance> d_;
};

DistanceMatrix pairwise_distances(std::span<const Cell> points, const GridWorld& world);

struct SenseResult {
  std::size_t explored = 0;
  std::vector<TaskId> detected;  // hidden tasks inside the sensed square
};

// Marks every free cell within Chebyshev distance `radius` as explored at the
// current iteration and reports hidden tasks found there.
SenseResult sense(GridWorld& world, Cell position, int radius);

struct PopulationResult {
  std::vector<TaskId> spawned;
  std::size_t fallbacks = 0;  // spawns that had to use an explored cell
};

// Spawns hidden tasks on uniformly random free, task-free, unknown cells until
// `target_active` live tasks exist. When no unknown cell qualifies, any free
// task-free cell is used and counted as a fallback.
PopulationResult maintain_population(GridWorld& world, std::size_t target_active, Rng& rng);

// Reverts explored cells last seen at least `forget_after` iterations ago.
// Returns the number of cells forgotten.
std::size_t decay_knowledge(GridWorld& world, int forget_after);

// Breadth-first distances from every free cell to one goal. Obstacles are
// static, so a field stays valid for the lifetime of a world.
class DistanceField {
 public:
  DistanceField(const GridWorld& world, Cell goal);

  Cell goal() const { return goal_; }
  GridDistance at(const GridWorld& world, Cell from) const { return dist_[world.index(from)]; }
  // Neighbour of `from` one step closer to the goal (N, S, W, E preference).
  std::optional<Cell> step_toward(const GridWorld& world, Cell from) const;

 private:
  Cell goal_;
  std::vector<GridDistance> dist_;
};

class DistanceFieldCache {
 public:
  const DistanceField& field(const GridWorld& world, Cell goal);
  GridDistance distance(const GridWorld& world, Cell from, Cell goal) { return field(world, goal).at(world, from); }
  void evict(const GridWorld& world, Cell goal) { fields_.erase(world.index(goal)); }
  std::size_t size() const { return fields_.size(); }

 private:
  std::unordered_map<std::size_t, DistanceField> fields_;
};

// The four grid neighbours in N, S, W, E order (may be out of bounds).
inline std::array<Cell, 4> neighbours(Cell c) {
  return {Cell{c.row - 1, c.col}, Cell{c.row + 1, c.col}, Cell{c.row, c.col - 1}, Cell{c.row, c.col + 1}};
}

}  // namespace hgmp

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "hgmp/world.hpp"
#include "support/oracles.hpp"

using namespace hgmp;

TEST_CASE("shortest path basics") {
  GridWorld world(10, 10);
  const auto same = shortest_path(world, {0, 0}, {0, 0});
  REQUIRE(same);
  CHECK(same->total_cost == 0);
  CHECK(same->cells.size() == 1);

  const auto straight = shortest_path(world, {0, 0}, {0, 7});
  REQUIRE(straight);
  CHECK(straight->total_cost == 7);
  CHECK(straight->cells.front() == Cell{0, 0});
  CHECK(straight->cells.back() == Cell{0, 7});
}

TEST_CASE("shortest path is a connected chain of the reported length") {
  Rng rng(11);
  const GridWorld world = oracle::random_world(20, 20, 0.25, rng);
  for (int i = 0; i < 50; ++i) {
    const Cell a = oracle::random_free_cell(world, rng);
    const Cell b = oracle::random_free_cell(world, rng);
    const int expected = oracle::bfs_distance(world, a, b);
    const auto path = shortest_path(world, a, b);
    if (expected < 0) {
      CHECK_FALSE(path);
      continue;
    }
    REQUIRE(path);
    CHECK(path->total_cost == expected);
    CHECK(path->cells.size() == static_cast<std::size_t>(expected) + 1);
    CHECK(path->cells.front() == a);
    CHECK(path->cells.back() == b);
    for (std::size_t k = 1; k < path->cells.size(); ++k) {
      CHECK(manhattan(path->cells[k - 1], path->cells[k]) == 1);
      CHECK(world.is_free(path->cells[k]));
    }
  }
}

TEST_CASE("walled-off goal has no path") {
  const std::vector<std::string> rows = {"..#..", "..#..", "..#.."};
  const GridWorld world = GridWorld::from_rows(rows);
  CHECK_FALSE(shortest_path(world, {0, 0}, {0, 4}));
  const std::vector<Cell> pts = {{0, 0}, {2, 4}};
  CHECK(pairwise_distances(pts, world).at(0, 1) == kUnreachable);
}

TEST_CASE("pairwise distances") {
  GridWorld world(10, 10);
  const std::vector<Cell> one = {{3, 3}};
  const DistanceMatrix single = pairwise_distances(one, world);
  CHECK(single.size() == 1);
  CHECK(single.at(0, 0) == 0);

  const std::vector<Cell> line = {{0, 0}, {0, 3}, {0, 5}};
  const DistanceMatrix m = pairwise_distances(line, world);
  CHECK(m.at(0, 1) == 3);
  CHECK(m.at(0, 2) == 5);
  CHECK(m.at(1, 2) == 2);

  Rng rng(5);
  const GridWorld blocked = oracle::random_world(15, 15, 0.2, rng);
  std::vector<Cell> pts;
  for (int i = 0; i < 6; ++i) pts.push_back(oracle::random_free_cell(blocked, rng));
  const DistanceMatrix d = pairwise_distances(pts, blocked);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(d.at(i, i) == 0);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const int bfs = oracle::bfs_distance(blocked, pts[i], pts[j]);
      CHECK(d.at(i, j) == (bfs < 0 ? kUnreachable : bfs));
      CHECK(d.at(i, j) == d.at(j, i));
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (d.at(i, k) == kUnreachable || d.at(k, j) == kUnreachable) continue;
        CHECK(d.at(i, j) <= d.at(i, k) + d.at(k, j));
      }
    }
  }
}

TEST_CASE("sense marks a square and reports hidden tasks") {
  GridWorld world(10, 10);
  world.set_iteration(4);
  CHECK(sense(world, {5, 5}, 0).explored == 1);
  CHECK(world.is_explored({5, 5}));
  CHECK_FALSE(world.is_explored({5, 6}));

  GridWorld fresh(10, 10);
  CHECK(sense(fresh, {5, 5}, 2).explored == 25);
  CHECK(fresh.explored_count() == 25);
  CHECK(fresh.last_seen({3, 3}) == 0);

  GridWorld tasks(10, 10);
  const TaskId far = tasks.add_task({5, 8});
  const TaskId near = tasks.add_task({4, 6});
  const SenseResult r = sense(tasks, {5, 5}, 2);
  CHECK(r.detected == std::vector<TaskId>{near});
  CHECK(tasks.task(near).phase == TaskPhase::kHidden);
  CHECK(tasks.task(far).phase == TaskPhase::kHidden);

  GridWorld corner(10, 10);
  CHECK(sense(corner, {0, 0}, 2).explored == 9);
}

TEST_CASE("task lifecycle only moves forward") {
  GridWorld world(5, 5);
  const TaskId id = world.add_task({1, 1});
  CHECK(world.active_task_count() == 1);
  CHECK_THROWS_AS(world.announce_task(id), std::logic_error);
  world.claim_task(id, 2, 7);
  CHECK(world.task(id).detected_by == 2);
  CHECK(world.task(id).detected_at == 7);
  CHECK_THROWS_AS(world.assign_task(id, 0, Shares{0.5, 0.5}), std::logic_error);
  world.announce_task(id);
  CHECK_THROWS_AS(world.release_claim(id), std::logic_error);
  world.assign_task(id, 1, Shares{0.25, 0.75});
  CHECK(world.task(id).shares->hunter + world.task(id).shares->gatherer == 1.0);
  world.complete_task(id, 9);
  CHECK(world.active_task_count() == 0);
  CHECK_FALSE(world.task_at({1, 1}));
  CHECK_THROWS_AS(world.complete_task(id, 10), std::logic_error);
  const std::vector<TaskPhase> expected = {TaskPhase::kHidden, TaskPhase::kAnnounced, TaskPhase::kAssigned,
                                           TaskPhase::kCompleted};
  CHECK(world.task(id).history == expected);
}

TEST_CASE("released claims return the task to the hidden pool") {
  GridWorld world(5, 5);
  const TaskId id = world.add_task({2, 2});
  world.claim_task(id, 0, 1);
  world.release_claim(id);
  CHECK_FALSE(world.task(id).detected_by);
  CHECK(world.task(id).phase == TaskPhase::kHidden);
  CHECK(sense(world, {2, 2}, 0).detected.size() == 1);
}

TEST_CASE("population is topped up on free unknown cells") {
  Rng rng(3);
  GridWorld world = oracle::random_world(30, 30, 0.2, rng);
  PopulationResult first = maintain_population(world, 50, rng);
  CHECK(first.spawned.size() == 50);
  CHECK(world.active_task_count() == 50);
  CHECK(maintain_population(world, 50, rng).spawned.empty());

  world.claim_task(first.spawned[0], 0, 1);
  world.announce_task(first.spawned[0]);
  world.assign_task(first.spawned[0], 0, {});
  world.complete_task(first.spawned[0], 1);
  world.claim_task(first.spawned[1], 0, 1);
  world.announce_task(first.spawned[1]);
  world.assign_task(first.spawned[1], 0, {});
  world.complete_task(first.spawned[1], 1);
  CHECK(world.active_task_count() == 48);
  const PopulationResult again = maintain_population(world, 50, rng);
  CHECK(again.spawned.size() == 2);
  CHECK(world.active_task_count() == 50);

  std::set<Cell> occupied;
  for (const Task& t : world.tasks()) {
    CHECK(world.is_free(t.location));
    if (t.phase != TaskPhase::kCompleted) CHECK(occupied.insert(t.location).second);
  }
}

TEST_CASE("spawning falls back to explored cells only when it must") {
  GridWorld world(3, 3);
  Rng rng(1);
  sense(world, {1, 1}, 1);
  const PopulationResult r = maintain_population(world, 4, rng);
  CHECK(r.spawned.size() == 4);
  CHECK(r.fallbacks == 4);

  GridWorld partial(3, 3);
  sense(partial, {0, 0}, 0);
  const PopulationResult p = maintain_population(partial, 8, rng);
  CHECK(p.fallbacks == 0);
  CHECK_FALSE(partial.task_at({0, 0}));
}

TEST_CASE("knowledge decays at the threshold") {
  GridWorld world(5, 5);
  world.set_iteration(10);
  sense(world, {0, 0}, 0);
  world.set_iteration(109);
  CHECK(decay_knowledge(world, 100) == 0);
  CHECK(world.is_explored({0, 0}));
  world.set_iteration(110);
  CHECK(decay_knowledge(world, 100) == 1);
  CHECK_FALSE(world.is_explored({0, 0}));

  world.set_iteration(5);
  sense(world, {2, 2}, 2);
  world.set_iteration(100000);
  CHECK(decay_knowledge(world, kNeverForget) == 0);
  CHECK(world.explored_count() == 25);
}

TEST_CASE("map parsing") {
  const std::vector<std::string> rows = {"..#", "#.."};
  const GridWorld world = GridWorld::from_rows(rows);
  CHECK(world.width() == 3);
  CHECK(world.height() == 2);
  CHECK_FALSE(world.is_free({0, 2}));
  CHECK(world.is_free({1, 1}));
  CHECK(world.free_cell_count() == 4);
  const std::vector<std::string> ragged = {"...", ".."};
  CHECK_THROWS_AS(GridWorld::from_rows(ragged), std::invalid_argument);
  const std::vector<std::string> junk = {".x."};
  CHECK_THROWS_AS(GridWorld::from_rows(junk), std::invalid_argument);
}

TEST_CASE("distance fields agree with breadth-first search") {
  Rng rng(8);
  const GridWorld world = oracle::random_world(25, 25, 0.25, rng);
  DistanceFieldCache cache;
  for (int i = 0; i < 30; ++i) {
    const Cell a = oracle::random_free_cell(world, rng);
    const Cell b = oracle::random_free_cell(world, rng);
    const int bfs = oracle::bfs_distance(world, a, b);
    CHECK(cache.distance(world, a, b) == (bfs < 0 ? kUnreachable : bfs));
    if (bfs > 0) {
      const auto step = cache.field(world, b).step_toward(world, a);
      REQUIRE(step);
      CHECK(oracle::bfs_distance(world, *step, b) == bfs - 1);
    }
  }
}

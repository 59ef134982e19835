#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hgmp/planning.hpp"
#include "support/oracles.hpp"

using namespace hgmp;

namespace {

DistanceFn manhattan_fn() {
  return [](Cell a, Cell b) { return static_cast<GridDistance>(manhattan(a, b)); };
}

Announcement at(AgentId hunter, TaskId task, Cell c, int when) { return {hunter, task, c, when}; }

}  // namespace

TEST_CASE("route over a single stop") {
  const std::vector<Cell> one = {{0, 5}};
  const RoutePlan r = plan_route({0, 0}, one, manhattan_fn());
  CHECK(r.order == std::vector<std::size_t>{0});
  CHECK(r.cumulative == std::vector<double>{5.0});
  CHECK(r.total == 5.0);

  const RoutePlan none = plan_route({0, 0}, std::span<const Cell>{}, manhattan_fn());
  CHECK(none.order.empty());
  CHECK(none.total == 0.0);
}

TEST_CASE("stops on a line are visited in line order") {
  const std::vector<Cell> stops = {{0, 9}, {0, 3}, {0, 6}};
  const RoutePlan r = plan_route({0, 0}, stops, manhattan_fn());
  CHECK(r.order == std::vector<std::size_t>{1, 2, 0});
  CHECK(r.cumulative == std::vector<double>{9.0, 3.0, 6.0});
  CHECK(r.total == 9.0);
}

TEST_CASE("route equals the permutation minimum on obstacle grids") {
  Rng rng(17);
  for (int n = 0; n < 60; ++n) {
    const GridWorld world = oracle::random_world(18, 18, 0.2, rng);
    const std::size_t q = 1 + rng.uniform_index(6);
    std::vector<Cell> nodes;
    for (std::size_t i = 0; i <= q; ++i) nodes.push_back(oracle::random_free_cell(world, rng));
    const DistanceMatrix m = pairwise_distances(nodes, world);
    std::vector<std::vector<double>> d(nodes.size(), std::vector<double>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = 0; j < nodes.size(); ++j) d[i][j] = to_cost(m.at(i, j));
    }
    const RoutePlan r = plan_route(m);
    const double expected = oracle::brute_force_route(d);
    CHECK(r.total == expected);
    CHECK(r.order.size() == q);
    if (std::isfinite(expected)) {
      double walked = 0.0;
      std::size_t from = 0;
      for (const std::size_t stop : r.order) {
        walked += d[from][stop + 1];
        CHECK(r.cumulative[stop] == walked);
        from = stop + 1;
      }
    }
  }
}

TEST_CASE("unreachable stops go last with infinite cost") {
  const std::vector<std::string> rows = {".....", "#####", "....."};
  const GridWorld world = GridWorld::from_rows(rows);
  const std::vector<Cell> stops = {{2, 0}, {0, 4}};
  const RoutePlan r = plan_route({0, 0}, stops, world);
  CHECK(r.order == std::vector<std::size_t>{1, 0});
  CHECK(r.cumulative[1] == 4.0);
  CHECK(std::isinf(r.cumulative[0]));
  CHECK(std::isinf(r.total));
}

TEST_CASE("partner choice: oldest feasible announcement") {
  const MarginParams g = MarginParams::gatherer(1, 1, 10, 10);  // R_c 10, R_u 20
  ActionPlan empty;
  const std::vector<Announcement> board = {at(0, 1, {0, 30}, 1), at(1, 2, {0, 15}, 2), at(2, 3, {0, 5}, 3)};
  const auto c = choose_partner({0, 0}, empty, board, g, 5, manhattan_fn());
  REQUIRE(c);
  CHECK(c->announcement.hunter == 1);
  CHECK(c->temp_cost == 15.0);
  CHECK(c->stops.size() == 1);

  const std::vector<Announcement> one = {at(0, 1, {0, 4}, 1)};
  const auto only = choose_partner({0, 0}, empty, one, g, 5, manhattan_fn());
  REQUIRE(only);
  CHECK(classify_state(only->temp_cost, g) == MarginState::kCertain);

  CHECK_FALSE(choose_partner({0, 0}, empty, {}, g, 5, manhattan_fn()));
  const std::vector<Announcement> far = {at(0, 1, {0, 21}, 1)};
  CHECK_FALSE(choose_partner({0, 0}, empty, far, g, 5, manhattan_fn()));
}

TEST_CASE("partner choice: a detour that breaks an existing budget is skipped") {
  const MarginParams g = MarginParams::gatherer(1, 1, 10, 10);
  ActionPlan plan;
  PlanEntry e;
  e.task = 7;
  e.location = {0, 10};
  e.agreed_cost = e.temp_cost = 10.0;
  e.share = 0.0;  // budget exactly 10
  plan.entries.push_back(e);
  plan.route_total = 10.0;

  // {0,-3} must be visited first on the best route, pushing the existing
  // entry to 16 > 10. {0, 12} keeps it at 10.
  const std::vector<Announcement> board = {at(0, 1, {0, -3}, 1), at(1, 2, {0, 12}, 2)};
  const auto c = choose_partner({0, 0}, plan, board, g, 5, manhattan_fn());
  REQUIRE(c);
  CHECK(c->announcement.hunter == 1);
  CHECK(c->temp_cost == 12.0);
  CHECK(c->stops.size() == 2);
  CHECK(c->stops[0].temp_cost == 10.0);

  const ActionPlan committed = commit_candidate(*c, 0.25);
  REQUIRE(committed.size() == 2);
  CHECK(committed.entries[0].task == 7);
  CHECK(committed.entries[1].task == 2);
  CHECK(committed.entries[1].share == 0.25);
  CHECK(committed.entries[1].agreed_cost == 12.0);
  CHECK(committed.route_total == 12.0);

  CHECK_FALSE(choose_partner({0, 0}, committed, board, g, 2, manhattan_fn()));
}

TEST_CASE("commit into an empty plan") {
  const MarginParams g = MarginParams::gatherer(1, 1, 10, 10);
  const std::vector<Announcement> board = {at(3, 9, {2, 2}, 4)};
  const auto c = choose_partner({0, 0}, ActionPlan{}, board, g, 1, manhattan_fn());
  REQUIRE(c);
  const ActionPlan plan = commit_candidate(*c, 0.6);
  CHECK(plan.size() == 1);
  CHECK(plan.route_total == 4.0);
  CHECK(plan.entries[0].hunter == 3);
  CHECK_FALSE(choose_partner({0, 0}, plan, board, g, 1, manhattan_fn()));
}

TEST_CASE("property: committed plans stay within every entry's budget") {
  Rng rng(99);
  const DistanceFn dist = manhattan_fn();
  for (int trial = 0; trial < 300; ++trial) {
    const MarginParams g = MarginParams::gatherer(rng.uniform(0.05, 0.5), rng.uniform(0.05, 0.5), 140, 140);
    const std::size_t q_max = 1 + rng.uniform_index(8);
    ActionPlan plan;
    const Cell pos{50, 50};
    for (int step = 0; step < 12; ++step) {
      std::vector<Announcement> board;
      for (int k = 0; k < 4; ++k) {
        board.push_back(at(k, step * 10 + k,
                           {40 + static_cast<int>(rng.uniform_index(21)), 40 + static_cast<int>(rng.uniform_index(21))},
                           k));
      }
      const auto c = choose_partner(pos, plan, board, g, q_max, dist);
      if (!c) continue;
      CHECK(classify_state(c->temp_cost, g) != MarginState::kUnprofitable);
      const ProfitInterval iv = profit_interval(c->temp_cost, g);
      plan = commit_candidate(*c, rng.uniform(iv.lower, 1.0));
      CHECK(plan.size() <= q_max);
      for (const PlanEntry& e : plan.entries) {
        CHECK(g.alpha * g.own_incentive + g.beta * e.share * g.extra_incentive >= e.temp_cost - 1e-9);
      }
    }
  }
}

TEST_CASE("replan reorders from a new position") {
  ActionPlan plan;
  for (const int col : {2, 8}) {
    PlanEntry e;
    e.task = col;
    e.location = {0, col};
    plan.entries.push_back(e);
  }
  replan(plan, {0, 10}, manhattan_fn());
  CHECK(plan.entries[0].task == 8);
  CHECK(plan.entries[0].temp_cost == 2.0);
  CHECK(plan.entries[1].temp_cost == 8.0);
  CHECK(plan.route_total == 8.0);
}

TEST_CASE("frontier targets") {
  GridWorld world(12, 12);
  world.set_iteration(1);
  sense(world, {5, 5}, 2);
  const auto t = next_frontier_target(world, {5, 5});
  REQUIRE(t);
  CHECK(chebyshev(t->cell, {5, 5}) == 2);
  CHECK(is_frontier(world, t->cell));
  CHECK(t->path.size() == static_cast<std::size_t>(manhattan(t->cell, {5, 5})));
  // Two frontiers at distance 2 share the lowest (row, col): (3, 5) is reached
  // before (5, 3) and (5, 7) in lexicographic order.
  CHECK(t->cell == Cell{3, 5});

  GridWorld done(4, 4);
  sense(done, {1, 1}, 5);
  CHECK_FALSE(next_frontier_target(done, {1, 1}));

  GridWorld unknown(4, 4);
  CHECK_FALSE(next_frontier_target(unknown, {1, 1}));
}

TEST_CASE("frontier ignores unknown cells behind walls") {
  const std::vector<std::string> rows = {"...#.", "...#.", "...#."};
  GridWorld world = GridWorld::from_rows(rows);
  sense(world, {1, 1}, 2);
  CHECK_FALSE(next_frontier_target(world, {1, 1}));
}

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hgmp/margins.hpp"
#include "hgmp/negotiation.hpp"
#include "hgmp/types.hpp"
#include "hgmp/world.hpp"

namespace hgmp {

struct PlanEntry {
  TaskId task = -1;
  AgentId hunter = -1;
  Cell location;
  double agreed_cost = 0.0;  // cumulative route distance when the deal was struck
  double temp_cost = 0.0;    // cumulative route distance under the current route
  double share = 0.0;        // gatherer share of the extra incentive
};

// Visiting order over a set of stops. `order` lists stop indices; `cumulative`
// is indexed by stop and holds the route distance from the start to that
// stop (infinity for stops that cannot be reached).
struct RoutePlan {
  std::vector<std::size_t> order;
  std::vector<double> cumulative;
  double total = 0.0;
};

struct ActionPlan {
  std::vector<PlanEntry> entries;  // in visiting order
  double route_total = 0.0;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

using DistanceFn = std::function<GridDistance(Cell, Cell)>;

// Exact minimum-length open path from node 0 through every other node of the
// matrix (subset dynamic programming). Stops are matrix nodes 1..n-1 and are
// reported as indices 0..n-2. Unreachable stops go last with infinite cost.
RoutePlan plan_route(const DistanceMatrix& distances);

RoutePlan plan_route(Cell position, std::span<const Cell> locations, const DistanceFn& distance);
RoutePlan plan_route(Cell position, std::span<const Cell> locations, const GridWorld& world);

// A board entry that passed the feasibility checks, with the tentative plan
// that would result from committing to it.
struct Candidate {
  Announcement announcement;
  double temp_cost = 0.0;
  // Existing entries with refreshed temp costs, then the candidate itself
  // (share still unset); `route` indexes into this list.
  std::vector<PlanEntry> stops;
  RoutePlan route;
};

// Oldest-first board scan. A candidate is rejected when the tentative route
// puts the gatherer in the unprofitable state for it, or when any existing
// entry's refreshed cost exceeds its agreed-share budget.
std::optional<Candidate> choose_partner(Cell position, const ActionPlan& plan, std::span<const Announcement> waiting,
                                        const MarginParams& gatherer, std::size_t q_max, const DistanceFn& distance);

// Adds the candidate at its negotiated share and adopts the tentative route.
ActionPlan commit_candidate(const Candidate& candidate, double gatherer_share);

// Re-orders the plan optimally from `position` and refreshes temp costs.
void replan(ActionPlan& plan, Cell position, const DistanceFn& distance);

// An explored free cell with at least one unexplored free neighbour.
bool is_frontier(const GridWorld& world, Cell cell);

struct FrontierTarget {
  Cell cell;
  std::vector<Cell> path;  // from the start (exclusive) to the target (inclusive)
};

// Nearest frontier by grid distance, ties to the lowest (row, col).
std::optional<FrontierTarget> next_frontier_target(const GridWorld& world, Cell position);

}  // namespace hgmp

#include "hgmp/planning.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace hgmp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double budget(const MarginParams& params, double share) {
  return params.alpha * params.own_incentive + params.beta * share * params.extra_incentive;
}

}  // namespace

RoutePlan plan_route(const DistanceMatrix& distances) {
  const std::size_t n = distances.size();
  if (n == 0) throw std::invalid_argument("route matrix needs a start node");
  RoutePlan plan;
  plan.cumulative.assign(n - 1, kInf);
  if (n == 1) return plan;

  std::vector<std::size_t> reachable;  // matrix nodes
  std::vector<std::size_t> stranded;
  for (std::size_t v = 1; v < n; ++v) {
    (distances.at(0, v) == kUnreachable ? stranded : reachable).push_back(v);
  }
  const std::size_t k = reachable.size();
  if (k > 20) throw std::invalid_argument("too many stops for exact routing");

  // best[mask * k + last]: shortest path from the start covering `mask` and
  // ending at reachable[last]. Stops in one component are mutually reachable.
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<double> best((full + 1) * std::max<std::size_t>(k, 1), kInf);
  std::vector<std::int32_t> prev(best.size(), -1);
  for (std::size_t i = 0; i < k; ++i) best[(std::size_t{1} << i) * k + i] = distances.at(0, reachable[i]);
  for (std::size_t mask = 1; mask <= full; ++mask) {
    for (std::size_t last = 0; last < k; ++last) {
      if (!(mask & (std::size_t{1} << last))) continue;
      const double here = best[mask * k + last];
      if (here == kInf) continue;
      for (std::size_t next = 0; next < k; ++next) {
        if (mask & (std::size_t{1} << next)) continue;
        const std::size_t grown = mask | (std::size_t{1} << next);
        const double cand = here + distances.at(reachable[last], reachable[next]);
        if (cand < best[grown * k + next]) {
          best[grown * k + next] = cand;
          prev[grown * k + next] = static_cast<std::int32_t>(last);
        }
      }
    }
  }

  if (k > 0) {
    std::size_t last = 0;
    for (std::size_t i = 1; i < k; ++i) {
      if (best[full * k + i] < best[full * k + last]) last = i;
    }
    plan.total = best[full * k + last];
    std::vector<std::size_t> reversed;
    std::size_t mask = full;
    for (std::int32_t at = static_cast<std::int32_t>(last); at >= 0;) {
      reversed.push_back(static_cast<std::size_t>(at));
      const std::int32_t before = prev[mask * k + static_cast<std::size_t>(at)];
      mask &= ~(std::size_t{1} << static_cast<std::size_t>(at));
      at = before;
    }
    double travelled = 0.0;
    std::size_t from = 0;
    for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) {
      const std::size_t node = reachable[*it];
      travelled += distances.at(from, node);
      plan.cumulative[node - 1] = travelled;
      plan.order.push_back(node - 1);
      from = node;
    }
  }
  for (const std::size_t node : stranded) plan.order.push_back(node - 1);
  if (!stranded.empty()) plan.total = kInf;
  return plan;
}

RoutePlan plan_route(Cell position, std::span<const Cell> locations, const DistanceFn& distance) {
  std::vector<Cell> nodes;
  nodes.reserve(locations.size() + 1);
  nodes.push_back(position);
  nodes.insert(nodes.end(), locations.begin(), locations.end());
  DistanceMatrix matrix(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) matrix.set(i, j, distance(nodes[i], nodes[j]));
  }
  return plan_route(matrix);
}

RoutePlan plan_route(Cell position, std::span<const Cell> locations, const GridWorld& world) {
  std::vector<Cell> nodes;
  nodes.reserve(locations.size() + 1);
  nodes.push_back(position);
  nodes.insert(nodes.end(), locations.begin(), locations.end());
  return plan_route(pairwise_distances(nodes, world));
}

std::optional<Candidate> choose_partner(Cell position, const ActionPlan& plan, std::span<const Announcement> waiting,
                                        const MarginParams& gatherer, std::size_t q_max, const DistanceFn& distance) {
  if (plan.size() >= q_max) return std::nullopt;
  const double reach = uncertainty_radius(gatherer);
  std::vector<Cell> locations;
  for (const PlanEntry& e : plan.entries) locations.push_back(e.location);
  locations.push_back(Cell{});

  for (const Announcement& a : waiting) {
    // Any route reaches the candidate no sooner than the direct path does.
    if (to_cost(distance(position, a.location)) > reach) continue;
    locations.back() = a.location;
    RoutePlan route = plan_route(position, locations, distance);
    const double temp = route.cumulative.back();
    if (classify_state(temp, gatherer) == MarginState::kUnprofitable) continue;
    bool feasible = true;
    for (std::size_t i = 0; i < plan.size() && feasible; ++i) {
      if (budget(gatherer, plan.entries[i].share) < route.cumulative[i]) feasible = false;
    }
    if (!feasible) continue;

    Candidate candidate;
    candidate.announcement = a;
    candidate.temp_cost = temp;
    candidate.stops = plan.entries;
    for (std::size_t i = 0; i < plan.size(); ++i) candidate.stops[i].temp_cost = route.cumulative[i];
    PlanEntry fresh;
    fresh.task = a.task;
    fresh.hunter = a.hunter;
    fresh.location = a.location;
    fresh.agreed_cost = temp;
    fresh.temp_cost = temp;
    candidate.stops.push_back(fresh);
    candidate.route = std::move(route);
    return candidate;
  }
  return std::nullopt;
}

ActionPlan commit_candidate(const Candidate& candidate, double gatherer_share) {
  ActionPlan plan;
  plan.route_total = candidate.route.total;
  for (const std::size_t i : candidate.route.order) {
    plan.entries.push_back(candidate.stops[i]);
    if (i + 1 == candidate.stops.size()) plan.entries.back().share = gatherer_share;
  }
  return plan;
}

void replan(ActionPlan& plan, Cell position, const DistanceFn& distance) {
  if (plan.empty()) {
    plan.route_total = 0.0;
    return;
  }
  std::vector<Cell> locations;
  for (const PlanEntry& e : plan.entries) locations.push_back(e.location);
  const RoutePlan route = plan_route(position, locations, distance);
  std::vector<PlanEntry> ordered;
  ordered.reserve(plan.size());
  for (const std::size_t i : route.order) {
    ordered.push_back(plan.entries[i]);
    ordered.back().temp_cost = route.cumulative[i];
  }
  plan.entries = std::move(ordered);
  plan.route_total = route.total;
}

bool is_frontier(const GridWorld& world, Cell cell) {
  if (!world.is_free(cell) || !world.is_explored(cell)) return false;
  for (const Cell nb : neighbours(cell)) {
    if (world.is_free(nb) && !world.is_explored(nb)) return true;
  }
  return false;
}

std::optional<FrontierTarget> next_frontier_target(const GridWorld& world, Cell position) {
  if (!world.is_free(position)) return std::nullopt;
  std::vector<std::int32_t> parent(world.cell_count(), -2);
  const std::size_t start = world.index(position);
  parent[start] = -1;
  std::vector<std::size_t> layer{start};
  std::vector<std::size_t> next;

  while (!layer.empty()) {
    std::optional<std::size_t> found;
    for (const std::size_t u : layer) {
      const Cell c = world.cell_at(u);
      if (is_frontier(world, c) && (!found || c < world.cell_at(*found))) found = u;
    }
    if (found) {
      FrontierTarget target;
      target.cell = world.cell_at(*found);
      for (std::int32_t v = static_cast<std::int32_t>(*found); v >= 0 && static_cast<std::size_t>(v) != start;
           v = parent[static_cast<std::size_t>(v)]) {
        target.path.push_back(world.cell_at(static_cast<std::size_t>(v)));
      }
      std::reverse(target.path.begin(), target.path.end());
      return target;
    }
    next.clear();
    for (const std::size_t u : layer) {
      for (const Cell nb : neighbours(world.cell_at(u))) {
        if (!world.is_free(nb)) continue;
        const std::size_t v = world.index(nb);
        if (parent[v] != -2) continue;
        parent[v] = static_cast<std::int32_t>(u);
        next.push_back(v);
      }
    }
    layer.swap(next);
  }
  return std::nullopt;
}

}  // namespace hgmp

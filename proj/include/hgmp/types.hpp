#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>

namespace hgmp {

using TaskId = std::int32_t;
using AgentId = std::int32_t;

// Grid distances are integral under unit-cost 4-connected movement.
using GridDistance = std::int32_t;
inline constexpr GridDistance kUnreachable = std::numeric_limits<GridDistance>::max();

inline double to_cost(GridDistance d) {
  return d == kUnreachable ? std::numeric_limits<double>::infinity() : static_cast<double>(d);
}

struct Cell {
  int row = 0;
  int col = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

inline int manhattan(Cell a, Cell b) {
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  return dr + dc;
}

inline int chebyshev(Cell a, Cell b) {
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  return dr > dc ? dr : dc;
}

enum class Role { kHunter, kGatherer };

// Agreed split of the extra incentive; hunter + gatherer == 1.
struct Shares {
  double hunter = 0.0;
  double gatherer = 1.0;
};

}  // namespace hgmp

template <>
struct std::hash<hgmp::Cell> {
  std::size_t operator()(const hgmp::Cell& c) const noexcept {
    return std::hash<std::int64_t>{}((static_cast<std::int64_t>(c.row) << 32) ^ static_cast<std::uint32_t>(c.col));
  }
};

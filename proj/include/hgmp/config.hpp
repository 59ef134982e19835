#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgmp/margins.hpp"
#include "hgmp/types.hpp"

namespace hgmp {

enum class Placement {
  kRandom,  // each agent starts on an independent uniformly random free cell
  kDepot,   // every agent starts on the free cell nearest the grid centre
};

struct MissionConfig {
  int width = 100;
  int height = 100;
  std::string map_file;  // overrides width/height when set

  int hunters = 4;
  int gatherers = 2;
  int live_tasks = 50;
  int iterations = 1000;

  double hunter_incentive = 140.0;
  double gatherer_incentive = 140.0;
  double extra_incentive = 140.0;
  double alpha_h = 0.35;
  double beta_h = 0.35;
  double alpha_g = 0.15;
  double beta_g = 0.15;
  double rho_h = 0.2;
  double rho_g = 1.0;

  int q_max = 5;
  int sensor_radius = 2;
  int forget_after = 100;
  bool perpetual = true;
  std::uint64_t seed = 1;

  Placement placement = Placement::kRandom;
  bool idle_drift = true;
  bool log_moves = true;

  // Fixed task cells; when non-empty they replace the random initial spawn.
  std::vector<Cell> tasks;

  MarginParams hunter_params() const {
    return MarginParams::hunter(alpha_h, beta_h, hunter_incentive, extra_incentive);
  }
  MarginParams gatherer_params() const {
    return MarginParams::gatherer(alpha_g, beta_g, gatherer_incentive, extra_incentive);
  }

  // Throws std::invalid_argument with the offending key.
  void validate() const;

  // Sets one field from its textual form. `rho_ratio` sets rho_h to the
  // ratio times rho_g. Throws std::invalid_argument on unknown keys or
  // malformed values.
  void set(std::string_view key, std::string_view value);

  // key = value lines in a fixed key order; parse(serialize()) round-trips.
  std::string serialize() const;
  static MissionConfig parse(std::string_view text);
  static MissionConfig load(const std::filesystem::path& file);

  // FNV-1a over the serialized form with the seed removed.
  std::uint64_t hash() const;
};

std::string_view to_string(Placement placement);

// Shortest decimal text that reads back as the same double.
std::string format_number(double value);

}  // namespace hgmp

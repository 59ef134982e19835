#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hgmp/config.hpp"
#include "hgmp/metrics.hpp"

namespace hgmp {

struct SweepAxis {
  std::string key;  // any MissionConfig key
  std::vector<double> values;
};

struct SweepSpec {
  std::string name = "custom";
  MissionConfig base;
  std::vector<SweepAxis> axes;  // cartesian product, first axis varies slowest
  int replications = 1;
  int first_replication = 0;  // resume a partial sweep from this index
  bool include_baseline = false;
  bool record_series = false;

  std::size_t point_count() const;
  std::vector<double> point(std::size_t index) const;
  // Replication r uses the same derived seed at every grid point, so points
  // are compared on common random numbers.
  MissionConfig config_for(std::size_t point, int replication) const;

  // Throws std::invalid_argument on empty axes or replications < 1.
  void validate() const;

  // fig7, fig8, fig9, fig11, fig12.
  static SweepSpec preset(std::string_view name);
  // Config keys set the base mission; `axis.<key> = a,b,c` or
  // `axis.<key> = start:step:stop` add axes; `replications`, `baseline`,
  // `series` and `name` configure the sweep itself.
  static SweepSpec parse(std::string_view text);
  static SweepSpec load(const std::filesystem::path& file);
};

// Evenly spaced values from start to stop inclusive, rounded to 12 decimals.
std::vector<double> grid_values(double start, double step, double stop);

struct SweepRow {
  std::size_t point = 0;
  int replication = 0;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  bool baseline = false;
  std::vector<double> axis_values;
  MetricsReport metrics;
};

struct SweepTable {
  std::vector<std::string> axis_names;
  std::size_t hunter_columns = 0;
  std::size_t gatherer_columns = 0;
  std::vector<SweepRow> rows;  // ordered by (point, replication, model)

  // One row per mission.
  void write_csv(std::ostream& out) const;
  // point,replication,model,<axes>,iteration,eta_t
  void write_series_csv(std::ostream& out) const;
};

using SweepProgress = std::function<void(std::size_t done, std::size_t total)>;

// Runs every mission of the spec on `workers` threads. Row order and content
// do not depend on the worker count.
SweepTable run_sweep(const SweepSpec& spec, unsigned workers, const SweepProgress& progress = {});

// HGMP_WORKERS when set to a positive integer, else the hardware thread count.
unsigned default_workers();

}  // namespace hgmp

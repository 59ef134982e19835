#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hgmp/baseline.hpp"
#include "hgmp/config.hpp"
#include "hgmp/csv.hpp"
#include "hgmp/engine.hpp"
#include "hgmp/plot.hpp"
#include "hgmp/stats.hpp"
#include "hgmp/sweep.hpp"

namespace fs = std::filesystem;
using namespace hgmp;

namespace {

void apply_overrides(MissionConfig& config, const std::vector<std::string>& overrides) {
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
}

void print_metrics(const MetricsReport& m) {
  std::printf("completed       %d\n", m.completed);
  std::printf("hunter_cost     %s\n", format_number(m.hunter_cost).c_str());
  std::printf("gatherer_cost   %s\n", format_number(m.gatherer_cost).c_str());
  std::printf("collective_cost %s\n", format_number(m.collective_cost).c_str());
  std::printf("eta_t           %.6g%s\n", m.effectiveness, m.zero_cost ? " (zero cost)" : "");
  for (const AgentMetrics& a : m.hunters) {
    std::printf("h%-3d tasks %-4d cost %-8s eta %.6g\n", a.id, a.accomplished, format_number(a.cost).c_str(),
                a.effectiveness);
  }
  for (const AgentMetrics& a : m.gatherers) {
    std::printf("g%-3d tasks %-4d cost %-8s eta %.6g\n", a.id, a.accomplished, format_number(a.cost).c_str(),
                a.effectiveness);
  }
}

std::vector<double> column_values(const CsvTable& table, const std::string& column,
                                  const std::optional<std::pair<std::size_t, std::string>>& filter) {
  const std::size_t col = table.column(column);
  const auto model = table.find("model");
  std::vector<double> out;
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (model && table.rows()[r][*model] == "baseline") continue;
    if (filter) {
      const std::string& cell = table.rows()[r][filter->first];
      if (cell != filter->second) {
        // Compare numerically so "4" matches "4.0".
        try {
          if (std::stod(cell) != std::stod(filter->second)) continue;
        } catch (const std::exception&) {
          continue;
        }
      }
    }
    out.push_back(table.number(r, col));
  }
  return out;
}

void print_result(const char* name, const TestResult& r, double alpha) {
  std::printf("test       %s\n", name);
  std::printf("statistic  %.10g\n", r.statistic);
  if (r.df2 > 0) {
    std::printf("df         %g, %g\n", r.df1, r.df2);
  } else {
    std::printf("df         %g\n", r.df1);
  }
  std::printf("p_value    %.10g\n", r.p_value);
  std::printf("critical   %.10g\n", r.critical);
  std::printf("alpha      %g\n", alpha);
  std::printf("decision   %s%s\n", r.reject ? "reject H0" : "fail to reject H0", r.degenerate ? " (degenerate)" : "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hunter/gatherer mission simulator"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run one mission and print its metrics");
  std::string config_file, log_out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  bool baseline = false;
  run->add_option("--config", config_file, "Mission config file")->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--log-out", log_out, "Write the event log as CSV");
  run->add_option("--set", overrides, "Override a config key (key=value)");
  run->add_flag("--baseline", baseline, "Run the single-type comparison team instead");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  std::string preset, spec_file, out_dir = ".";
  unsigned workers = 0;
  std::optional<int> replications, iterations, first_replication;
  std::vector<std::string> sweep_overrides;
  auto* preset_opt = sweep->add_option("--preset", preset, "fig7|fig8|fig9|fig11|fig12");
  auto* spec_opt = sweep->add_option("--spec", spec_file, "Sweep spec file")->check(CLI::ExistingFile);
  preset_opt->excludes(spec_opt);
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--workers", workers, "Worker threads (default: HGMP_WORKERS or all cores)");
  sweep->add_option("--replications", replications, "Replications per grid point");
  sweep->add_option("--first-replication", first_replication, "Resume from this replication index");
  sweep->add_option("--iterations", iterations, "Iterations per mission");
  sweep->add_option("--set", sweep_overrides, "Override a base config key (key=value)");

  // stats
  auto* stats = app.add_subcommand("stats", "Paired t-test or one-way ANOVA on a CSV");
  std::string test = "t", input;
  double alpha = 0.05, d0 = 0.0;
  std::string sided = "two", group_by, column = "eta_t";
  std::vector<std::string> columns, levels;
  stats->add_option("--test", test, "t|anova")->check(CLI::IsMember({"t", "anova"}));
  stats->add_option("--input", input, "CSV file")->required()->check(CLI::ExistingFile);
  stats->add_option("--alpha", alpha, "Significance level");
  stats->add_option("--columns", columns, "Compare these columns (t: exactly two; anova: two or more)")
      ->delimiter(',');
  stats->add_option("--group-by", group_by, "Group rows by this column");
  stats->add_option("--levels", levels, "Group levels to compare (default: all)")->delimiter(',');
  stats->add_option("--column", column, "Value column when grouping");
  stats->add_option("--d0", d0, "Null difference for the t-test");
  stats->add_option("--sided", sided, "one|two")->check(CLI::IsMember({"one", "two"}));

  // plot
  auto* plot = app.add_subcommand("plot", "Render a sweep or series CSV");
  std::string plot_input, kind = "heatmap", plot_out = "plot.png";
  PlotOptions options;
  plot->add_option("--input", plot_input, "CSV file")->required()->check(CLI::ExistingFile);
  plot->add_option("--kind", kind, "heatmap|series|bars");
  plot->add_option("--out", plot_out, "PNG file");
  plot->add_option("--x", options.x, "x column");
  plot->add_option("--y", options.y, "y column (heatmap)");
  plot->add_option("--value", options.value, "Value column");
  plot->add_option("--group", options.group, "Grouping column");
  plot->add_option("--columns", options.columns, "Bars: one bar per column")->delimiter(',');
  plot->add_option("--title", options.title, "Title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) {
      MissionConfig config = config_file.empty() ? MissionConfig{} : MissionConfig::load(config_file);
      apply_overrides(config, overrides);
      if (seed) config.seed = *seed;
      config.validate();
      MissionLog log;
      MetricsReport metrics;
      if (baseline) {
        BaselineResult r = run_baseline(config);
        log = std::move(r.log);
        metrics = std::move(r.metrics);
      } else {
        MissionResult r = run_mission(config);
        log = std::move(r.log);
        metrics = std::move(r.metrics);
      }
      if (!log_out.empty()) {
        std::ofstream out(log_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + log_out);
        log.write_csv(out);
      }
      print_metrics(metrics);
    } else if (*sweep) {
      if (preset.empty() && spec_file.empty()) throw std::invalid_argument("sweep needs --preset or --spec");
      SweepSpec spec = preset.empty() ? SweepSpec::load(spec_file) : SweepSpec::preset(preset);
      apply_overrides(spec.base, sweep_overrides);
      if (replications) spec.replications = *replications;
      if (first_replication) spec.first_replication = *first_replication;
      if (iterations) spec.base.iterations = *iterations;
      spec.validate();
      if (workers == 0) workers = default_workers();
      fs::create_directories(out_dir);
      const std::size_t total = spec.point_count() * static_cast<std::size_t>(spec.replications) *
                                (spec.include_baseline ? 2 : 1);
      std::fprintf(stderr, "%s: %zu missions on %u workers\n", spec.name.c_str(), total, workers);
      const SweepTable table = run_sweep(spec, workers, [](std::size_t done, std::size_t all) {
        if (done == all || done % 100 == 0) std::fprintf(stderr, "\r%zu/%zu", done, all);
        if (done == all) std::fprintf(stderr, "\n");
      });
      const fs::path csv = fs::path(out_dir) / (spec.name + ".csv");
      std::ofstream out(csv, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + csv.string());
      table.write_csv(out);
      std::printf("%s\n", csv.string().c_str());
      if (spec.record_series) {
        const fs::path series = fs::path(out_dir) / (spec.name + "_series.csv");
        std::ofstream sout(series, std::ios::binary);
        if (!sout) throw std::runtime_error("cannot write " + series.string());
        table.write_series_csv(sout);
        std::printf("%s\n", series.string().c_str());
      }
    } else if (*stats) {
      const CsvTable table = CsvTable::load(input);
      std::vector<std::vector<double>> groups;
      if (!columns.empty()) {
        for (const std::string& c : columns) groups.push_back(column_values(table, c, std::nullopt));
      } else if (!group_by.empty()) {
        const std::size_t g = table.column(group_by);
        if (levels.empty()) {
          std::map<double, std::string> seen;
          for (const auto& row : table.rows()) seen.emplace(std::stod(row[g]), row[g]);
          for (const auto& [_, text] : seen) levels.push_back(text);
        }
        for (const std::string& level : levels) {
          groups.push_back(column_values(table, column, std::make_pair(g, level)));
          if (groups.back().empty()) throw std::invalid_argument("no rows with " + group_by + " = " + level);
        }
      } else {
        throw std::invalid_argument("stats needs --columns or --group-by");
      }
      if (test == "t") {
        if (groups.size() != 2) throw std::invalid_argument("the t-test compares exactly two samples");
        if (groups[0].size() != groups[1].size()) throw std::invalid_argument("paired samples differ in length");
        const Sided s = sided == "one" ? Sided::kOne : Sided::kTwo;
        print_result(s == Sided::kOne ? "paired t (one-sided, H1: mean(b - a) > d0)" : "paired t (two-sided)",
                     paired_t_test(groups[0], groups[1], d0, alpha, s), alpha);
        std::printf("mean_a     %.10g\nmean_b     %.10g\n", mean(groups[0]), mean(groups[1]));
      } else {
        print_result("one-way anova", anova_oneway(groups, alpha), alpha);
        for (std::size_t i = 0; i < groups.size(); ++i) std::printf("mean_%zu     %.10g\n", i, mean(groups[i]));
      }
    } else if (*plot) {
      render_plot(CsvTable::load(plot_input), parse_plot_kind(kind), options, plot_out);
      std::printf("%s\n", plot_out.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hgmp: %s\n", e.what());
    return 1;
  }
  return 0;
}

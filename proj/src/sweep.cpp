#include "hgmp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hgmp/baseline.hpp"
#include "hgmp/csv.hpp"
#include "hgmp/engine.hpp"
#include "hgmp/rng.hpp"

namespace hgmp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view s) {
  s = trim(s);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("invalid number '" + std::string(s) + "' in sweep spec");
  }
  return out;
}

std::vector<double> parse_values(std::string_view text) {
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos) throw std::invalid_argument("axis range must be start:step:stop");
    return grid_values(parse_double(text.substr(0, a)), parse_double(text.substr(a + 1, b - a - 1)),
                       parse_double(text.substr(b + 1)));
  }
  std::vector<double> values;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (!item.empty()) values.push_back(parse_double(item));
  }
  return values;
}

bool parse_flag(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("invalid value '" + std::string(value) + "' for " + std::string(key));
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::vector<double> grid_values(double start, double step, double stop) {
  if (!(step > 0.0) || stop < start) throw std::invalid_argument("grid needs step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    values.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return values;
}

std::size_t SweepSpec::point_count() const {
  std::size_t n = 1;
  for (const SweepAxis& axis : axes) n *= axis.values.size();
  return n;
}

std::vector<double> SweepSpec::point(std::size_t index) const {
  std::vector<double> values(axes.size());
  for (std::size_t k = axes.size(); k-- > 0;) {
    const std::size_t n = axes[k].values.size();
    values[k] = axes[k].values[index % n];
    index /= n;
  }
  return values;
}

MissionConfig SweepSpec::config_for(std::size_t index, int replication) const {
  MissionConfig config = base;
  const std::vector<double> values = point(index);
  for (std::size_t k = 0; k < axes.size(); ++k) config.set(axes[k].key, format_number(values[k]));
  config.seed = derive_seed(base.seed, static_cast<std::uint64_t>(replication));
  return config;
}

void SweepSpec::validate() const {
  if (replications < 1) throw std::invalid_argument("replications must be at least 1");
  if (first_replication < 0 || first_replication >= replications) {
    throw std::invalid_argument("first_replication must lie in [0, replications)");
  }
  for (const SweepAxis& axis : axes) {
    if (axis.values.empty()) throw std::invalid_argument("sweep axis '" + axis.key + "' has no values");
    MissionConfig probe = base;
    probe.set(axis.key, format_number(axis.values.front()));
  }
  base.validate();
}

SweepSpec SweepSpec::preset(std::string_view name) {
  SweepSpec spec;
  spec.name = std::string(name);
  spec.base.log_moves = false;
  spec.replications = 50;
  if (name == "fig7") {
    spec.axes = {{"alpha_g", grid_values(0.0, 0.025, 0.5)}, {"beta_g", grid_values(0.0, 0.025, 0.5)}};
  } else if (name == "fig8") {
    spec.axes = {{"alpha_h", grid_values(0.0, 0.05, 1.0)}, {"beta_h", grid_values(0.0, 0.05, 1.0)}};
  } else if (name == "fig9") {
    spec.axes = {{"q_max", grid_values(1.0, 1.0, 10.0)}};
    spec.replications = 200;
  } else if (name == "fig11") {
    spec.axes = {{"q_max", {1.0, 4.0, 10.0}}};
    spec.record_series = true;
  } else if (name == "fig12") {
    spec.axes = {{"rho_ratio", grid_values(0.0, 0.1, 1.0)}};
    spec.include_baseline = true;
  } else {
    throw std::invalid_argument("unknown sweep preset '" + std::string(name) + "'");
  }
  return spec;
}

SweepSpec SweepSpec::parse(std::string_view text) {
  SweepSpec spec;
  spec.base.log_moves = false;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("sweep spec line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.starts_with("axis.")) {
      spec.axes.push_back({std::string(key.substr(5)), parse_values(value)});
    } else if (key == "replications") {
      spec.replications = static_cast<int>(parse_double(value));
    } else if (key == "first_replication") {
      spec.first_replication = static_cast<int>(parse_double(value));
    } else if (key == "baseline") {
      spec.include_baseline = parse_flag(key, value);
    } else if (key == "series") {
      spec.record_series = parse_flag(key, value);
    } else if (key == "name") {
      spec.name = std::string(value);
    } else {
      spec.base.set(key, value);
    }
  }
  return spec;
}

SweepSpec SweepSpec::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open sweep spec " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void SweepTable::write_csv(std::ostream& out) const {
  std::vector<std::string> header{"point", "replication", "seed", "config_hash", "model"};
  header.insert(header.end(), axis_names.begin(), axis_names.end());
  for (const char* col : {"completed", "collective_cost", "hunter_cost", "gatherer_cost", "eta_t"}) {
    header.emplace_back(col);
  }
  for (std::size_t i = 0; i < hunter_columns; ++i) header.push_back("eta_h" + std::to_string(i));
  for (std::size_t j = 0; j < gatherer_columns; ++j) header.push_back("eta_g" + std::to_string(j));
  write_csv_row(out, header);

  std::vector<std::string> fields;
  for (const SweepRow& row : rows) {
    fields.clear();
    fields.push_back(std::to_string(row.point));
    fields.push_back(std::to_string(row.replication));
    fields.push_back(std::to_string(row.seed));
    fields.push_back(hex(row.config_hash));
    fields.emplace_back(row.baseline ? "baseline" : "hgmp");
    for (const double v : row.axis_values) fields.push_back(format_number(v));
    const MetricsReport& m = row.metrics;
    fields.push_back(std::to_string(m.completed));
    fields.push_back(format_number(m.collective_cost));
    fields.push_back(format_number(m.hunter_cost));
    fields.push_back(format_number(m.gatherer_cost));
    fields.push_back(format_number(m.effectiveness));
    for (std::size_t i = 0; i < hunter_columns; ++i) {
      fields.push_back(!row.baseline && i < m.hunters.size() ? format_number(m.hunters[i].effectiveness) : "");
    }
    for (std::size_t j = 0; j < gatherer_columns; ++j) {
      fields.push_back(!row.baseline && j < m.gatherers.size() ? format_number(m.gatherers[j].effectiveness) : "");
    }
    write_csv_row(out, fields);
  }
}

void SweepTable::write_series_csv(std::ostream& out) const {
  std::vector<std::string> header{"point", "replication", "model"};
  header.insert(header.end(), axis_names.begin(), axis_names.end());
  header.emplace_back("iteration");
  header.emplace_back("eta_t");
  write_csv_row(out, header);
  std::vector<std::string> fields;
  for (const SweepRow& row : rows) {
    for (std::size_t t = 0; t < row.metrics.series.size(); ++t) {
      fields.clear();
      fields.push_back(std::to_string(row.point));
      fields.push_back(std::to_string(row.replication));
      fields.emplace_back(row.baseline ? "baseline" : "hgmp");
      for (const double v : row.axis_values) fields.push_back(format_number(v));
      fields.push_back(std::to_string(t + 1));
      fields.push_back(format_number(row.metrics.series[t]));
      write_csv_row(out, fields);
    }
  }
}

SweepTable run_sweep(const SweepSpec& spec, unsigned workers, const SweepProgress& progress) {
  spec.validate();
  struct Job {
    std::size_t point;
    int replication;
    bool baseline;
  };
  std::vector<Job> jobs;
  SweepTable table;
  for (const SweepAxis& axis : spec.axes) table.axis_names.push_back(axis.key);
  for (std::size_t p = 0; p < spec.point_count(); ++p) {
    const MissionConfig probe = spec.config_for(p, 0);
    table.hunter_columns = std::max(table.hunter_columns, static_cast<std::size_t>(probe.hunters));
    table.gatherer_columns = std::max(table.gatherer_columns, static_cast<std::size_t>(probe.gatherers));
    for (int r = spec.first_replication; r < spec.replications; ++r) {
      jobs.push_back({p, r, false});
      if (spec.include_baseline) jobs.push_back({p, r, true});
    }
  }
  table.rows.resize(jobs.size());

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        const Job& job = jobs[i];
        MissionConfig config = spec.config_for(job.point, job.replication);
        SweepRow& row = table.rows[i];
        row.point = job.point;
        row.replication = job.replication;
        row.seed = config.seed;
        row.config_hash = config.hash();
        row.baseline = job.baseline;
        row.axis_values = spec.point(job.point);
        row.metrics = job.baseline ? run_baseline(config).metrics : run_mission(config).metrics;
        if (!spec.record_series) row.metrics.series.clear();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
        return;
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, jobs.size());
      }
    }
  };

  const unsigned count = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  if (count == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < count; ++w) threads.emplace_back(work);
    for (std::thread& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return table;
}

unsigned default_workers() {
  if (const char* env = std::getenv("HGMP_WORKERS")) {
    unsigned value = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc{} && ptr == s.data() + s.size() && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace hgmp

#include "hgmp/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hgmp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw std::invalid_argument("invalid value '" + std::string(value) + "' for " + std::string(key));
}

int to_int(std::string_view key, std::string_view value) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    // Sweep axes are numeric; accept integral doubles such as "4" or "4.0".
    double d = 0.0;
    const auto [p2, e2] = std::from_chars(value.data(), value.data() + value.size(), d);
    if (e2 != std::errc{} || p2 != value.data() + value.size() || d != std::floor(d)) bad_value(key, value);
    return static_cast<int>(d);
  }
  return out;
}

std::uint64_t to_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(key, value);
  return out;
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(key, value);
  return out;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value);
}

int to_forget(std::string_view key, std::string_view value) {
  if (value == "never" || value == "inf") return std::numeric_limits<int>::max();
  return to_int(key, value);
}

std::vector<Cell> to_cells(std::string_view key, std::string_view value) {
  std::vector<Cell> cells;
  while (!value.empty()) {
    const auto sep = value.find(';');
    const std::string_view item = trim(value.substr(0, sep));
    value = sep == std::string_view::npos ? std::string_view{} : value.substr(sep + 1);
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string_view::npos) bad_value(key, item);
    cells.push_back(Cell{to_int(key, trim(item.substr(0, comma))), to_int(key, trim(item.substr(comma + 1)))});
  }
  return cells;
}

}  // namespace

std::string_view to_string(Placement placement) { return placement == Placement::kDepot ? "depot" : "random"; }

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void MissionConfig::validate() const {
  auto require = [](bool ok, const char* key, const char* what) {
    if (!ok) throw std::invalid_argument(std::string(key) + " " + what);
  };
  if (map_file.empty()) {
    require(width > 0, "width", "must be positive");
    require(height > 0, "height", "must be positive");
  }
  require(hunters > 0, "hunters", "must be positive");
  require(gatherers > 0, "gatherers", "must be positive");
  require(live_tasks >= 0, "live_tasks", "must be non-negative");
  require(iterations >= 0, "iterations", "must be non-negative");
  require(q_max >= 1 && q_max <= 12, "q_max", "must be in 1..12");
  require(sensor_radius >= 1, "sensor_radius", "must be at least 1");
  require(forget_after > 0, "forget_after", "must be positive");
  for (const auto& [key, v] : {std::pair{"hunter_incentive", hunter_incentive},
                               {"gatherer_incentive", gatherer_incentive},
                               {"extra_incentive", extra_incentive},
                               {"alpha_h", alpha_h},
                               {"beta_h", beta_h},
                               {"alpha_g", alpha_g},
                               {"beta_g", beta_g},
                               {"rho_h", rho_h},
                               {"rho_g", rho_g}}) {
    require(std::isfinite(v) && v >= 0.0, key, "must be finite and non-negative");
  }
}

void MissionConfig::set(std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  if (key == "width") width = to_int(key, value);
  else if (key == "height") height = to_int(key, value);
  else if (key == "map_file") map_file = std::string(value);
  else if (key == "hunters") hunters = to_int(key, value);
  else if (key == "gatherers") gatherers = to_int(key, value);
  else if (key == "live_tasks") live_tasks = to_int(key, value);
  else if (key == "iterations") iterations = to_int(key, value);
  else if (key == "hunter_incentive") hunter_incentive = to_double(key, value);
  else if (key == "gatherer_incentive") gatherer_incentive = to_double(key, value);
  else if (key == "extra_incentive") extra_incentive = to_double(key, value);
  else if (key == "incentive") hunter_incentive = gatherer_incentive = extra_incentive = to_double(key, value);
  else if (key == "alpha_h") alpha_h = to_double(key, value);
  else if (key == "beta_h") beta_h = to_double(key, value);
  else if (key == "alpha_g") alpha_g = to_double(key, value);
  else if (key == "beta_g") beta_g = to_double(key, value);
  else if (key == "rho_h") rho_h = to_double(key, value);
  else if (key == "rho_g") rho_g = to_double(key, value);
  else if (key == "rho_ratio") rho_h = to_double(key, value) * rho_g;
  else if (key == "q_max") q_max = to_int(key, value);
  else if (key == "sensor_radius") sensor_radius = to_int(key, value);
  else if (key == "forget_after") forget_after = to_forget(key, value);
  else if (key == "perpetual") perpetual = to_bool(key, value);
  else if (key == "seed") seed = to_u64(key, value);
  else if (key == "placement") {
    if (value == "random") placement = Placement::kRandom;
    else if (value == "depot") placement = Placement::kDepot;
    else bad_value(key, value);
  } else if (key == "idle_drift") idle_drift = to_bool(key, value);
  else if (key == "log_moves") log_moves = to_bool(key, value);
  else if (key == "tasks") tasks = to_cells(key, value);
  else throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

std::string MissionConfig::serialize() const {
  std::ostringstream out;
  out << "width = " << width << '\n'
      << "height = " << height << '\n';
  if (!map_file.empty()) out << "map_file = " << map_file << '\n';
  out << "hunters = " << hunters << '\n'
      << "gatherers = " << gatherers << '\n'
      << "live_tasks = " << live_tasks << '\n'
      << "iterations = " << iterations << '\n'
      << "hunter_incentive = " << format_number(hunter_incentive) << '\n'
      << "gatherer_incentive = " << format_number(gatherer_incentive) << '\n'
      << "extra_incentive = " << format_number(extra_incentive) << '\n'
      << "alpha_h = " << format_number(alpha_h) << '\n'
      << "beta_h = " << format_number(beta_h) << '\n'
      << "alpha_g = " << format_number(alpha_g) << '\n'
      << "beta_g = " << format_number(beta_g) << '\n'
      << "rho_h = " << format_number(rho_h) << '\n'
      << "rho_g = " << format_number(rho_g) << '\n'
      << "q_max = " << q_max << '\n'
      << "sensor_radius = " << sensor_radius << '\n'
      << "forget_after = ";
  if (forget_after == std::numeric_limits<int>::max()) out << "never";
  else out << forget_after;
  out << '\n'
      << "perpetual = " << (perpetual ? "true" : "false") << '\n'
      << "placement = " << to_string(placement) << '\n'
      << "idle_drift = " << (idle_drift ? "true" : "false") << '\n'
      << "log_moves = " << (log_moves ? "true" : "false") << '\n';
  if (!tasks.empty()) {
    out << "tasks = ";
    for (std::size_t i = 0; i < tasks.size(); ++i) out << (i ? ";" : "") << tasks[i].row << ',' << tasks[i].col;
    out << '\n';
  }
  out << "seed = " << seed << '\n';
  return out.str();
}

MissionConfig MissionConfig::parse(std::string_view text) {
  MissionConfig config;
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
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    config.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return config;
}

MissionConfig MissionConfig::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open config file " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::uint64_t MissionConfig::hash() const {
  MissionConfig unseeded = *this;
  unseeded.seed = 0;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : unseeded.serialize()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace hgmp

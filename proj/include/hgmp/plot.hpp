#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hgmp/csv.hpp"

namespace hgmp {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
};

// RGB raster with a built-in 5x7 font (upper-case letters, digits and basic
// punctuation; lower case is drawn upper case).
class Canvas {
 public:
  Canvas(int width, int height, Rgb background = {255, 255, 255});

  int width() const { return width_; }
  int height() const { return height_; }
  Rgb at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }

  void set(int x, int y, Rgb color);
  void fill(int x, int y, int w, int h, Rgb color);
  void line(int x0, int y0, int x1, int y1, Rgb color);
  void text(int x, int y, std::string_view s, Rgb color, int scale = 1);
  static int text_width(std::string_view s, int scale = 1) { return static_cast<int>(s.size()) * 6 * scale; }

  void save_png(const std::filesystem::path& file) const;

 private:
  int width_;
  int height_;
  std::vector<Rgb> pixels_;
};

// Perceptually ordered dark-blue to yellow ramp; t is clamped to [0, 1].
Rgb color_ramp(double t);

struct Heatmap {
  std::string title, x_label, y_label;
  std::vector<double> xs, ys;
  std::vector<double> values;  // ys.size() rows of xs.size(); NaN = no data
};

struct Series {
  std::string label;
  std::vector<double> x, y;
};

struct Bar {
  std::string label;
  double mean = 0.0;
  double spread = 0.0;  // drawn as +/- whisker
};

void draw_heatmap(const Heatmap& map, const std::filesystem::path& file);
void draw_series(std::span<const Series> series, std::string_view title, std::string_view x_label,
                 std::string_view y_label, const std::filesystem::path& file);
void draw_bars(std::span<const Bar> bars, std::string_view title, std::string_view y_label,
               const std::filesystem::path& file);

enum class PlotKind { kHeatmap, kSeries, kBars };
PlotKind parse_plot_kind(std::string_view name);

struct PlotOptions {
  std::string x = "";      // heatmap x axis / series x
  std::string y = "";      // heatmap y axis
  std::string value = "eta_t";
  std::string group = "";  // series or bar grouping column
  std::vector<std::string> columns;  // bars: one bar per column instead of per group
  std::string title;
};

// Aggregates a sweep or series table (mean per cell, group or x value) and
// renders it. Missing columns or an empty table raise std::invalid_argument.
void render_plot(const CsvTable& table, PlotKind kind, const PlotOptions& options,
                 const std::filesystem::path& file);

}  // namespace hgmp

#include "hgmp/plot.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>

#include "hgmp/config.hpp"

namespace hgmp {

namespace {

struct Glyph {
  char ch;
  std::uint8_t rows[7];
};

// 5x7 glyphs, one byte per row, most significant of the low five bits leftmost.
constexpr Glyph kGlyphs[] = {
    {'%', {0x18, 0x19, 0x02, 0x04, 0x08, 0x13, 0x03}},
    {'(', {0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02}},
    {')', {0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08}},
    {'+', {0x00, 0x04, 0x04, 0x1f, 0x04, 0x04, 0x00}},
    {',', {0x00, 0x00, 0x00, 0x00, 0x0c, 0x04, 0x08}},
    {'-', {0x00, 0x00, 0x00, 0x1f, 0x00, 0x00, 0x00}},
    {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c}},
    {'/', {0x00, 0x01, 0x02, 0x04, 0x08, 0x10, 0x00}},
    {'0', {0x0e, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0e}},
    {'1', {0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x0e}},
    {'2', {0x0e, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1f}},
    {'3', {0x1f, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0e}},
    {'4', {0x02, 0x06, 0x0a, 0x12, 0x1f, 0x02, 0x02}},
    {'5', {0x1f, 0x10, 0x1e, 0x01, 0x01, 0x11, 0x0e}},
    {'6', {0x06, 0x08, 0x10, 0x1e, 0x11, 0x11, 0x0e}},
    {'7', {0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0e, 0x11, 0x11, 0x0e, 0x11, 0x11, 0x0e}},
    {'9', {0x0e, 0x11, 0x11, 0x0f, 0x01, 0x02, 0x0c}},
    {':', {0x00, 0x0c, 0x0c, 0x00, 0x0c, 0x0c, 0x00}},
    {'<', {0x02, 0x04, 0x08, 0x10, 0x08, 0x04, 0x02}},
    {'=', {0x00, 0x00, 0x1f, 0x00, 0x1f, 0x00, 0x00}},
    {'>', {0x08, 0x04, 0x02, 0x01, 0x02, 0x04, 0x08}},
    {'?', {0x0e, 0x11, 0x01, 0x02, 0x04, 0x00, 0x04}},
    {'A', {0x0e, 0x11, 0x11, 0x1f, 0x11, 0x11, 0x11}},
    {'B', {0x1e, 0x11, 0x11, 0x1e, 0x11, 0x11, 0x1e}},
    {'C', {0x0e, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0e}},
    {'D', {0x1c, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1c}},
    {'E', {0x1f, 0x10, 0x10, 0x1e, 0x10, 0x10, 0x1f}},
    {'F', {0x1f, 0x10, 0x10, 0x1e, 0x10, 0x10, 0x10}},
    {'G', {0x0e, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0f}},
    {'H', {0x11, 0x11, 0x11, 0x1f, 0x11, 0x11, 0x11}},
    {'I', {0x0e, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0e}},
    {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0c}},
    {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}},
    {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1f}},
    {'M', {0x11, 0x1b, 0x15, 0x15, 0x11, 0x11, 0x11}},
    {'N', {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11}},
    {'O', {0x0e, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0e}},
    {'P', {0x1e, 0x11, 0x11, 0x1e, 0x10, 0x10, 0x10}},
    {'Q', {0x0e, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0d}},
    {'R', {0x1e, 0x11, 0x11, 0x1e, 0x14, 0x12, 0x11}},
    {'S', {0x0f, 0x10, 0x10, 0x0e, 0x01, 0x01, 0x1e}},
    {'T', {0x1f, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0e}},
    {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0a, 0x04}},
    {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0a}},
    {'X', {0x11, 0x11, 0x0a, 0x04, 0x0a, 0x11, 0x11}},
    {'Y', {0x11, 0x11, 0x0a, 0x04, 0x04, 0x04, 0x04}},
    {'Z', {0x1f, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1f}},
    {'_', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1f}},
};

const std::uint8_t* glyph_rows(char c) {
  if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  for (const Glyph& g : kGlyphs) {
    if (g.ch == c) return g.rows;
  }
  return nullptr;
}

constexpr Rgb kBlack{0, 0, 0};
constexpr Rgb kGrey{200, 200, 200};
constexpr Rgb kPalette[] = {{31, 119, 180}, {214, 39, 40}, {44, 160, 44}, {255, 127, 14}, {148, 103, 189},
                            {140, 86, 75},  {227, 119, 194}, {127, 127, 127}};

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Frame {
  int left = 70, right = 20, top = 40, bottom = 50;
};

void axes_frame(Canvas& c, const Frame& f, std::string_view title, std::string_view x_label,
                std::string_view y_label) {
  const int x0 = f.left, y0 = c.height() - f.bottom, x1 = c.width() - f.right, y1 = f.top;
  c.line(x0, y0, x1, y0, kBlack);
  c.line(x0, y0, x0, y1, kBlack);
  c.text((c.width() - Canvas::text_width(title, 2)) / 2, 10, title, kBlack, 2);
  c.text((x0 + x1 - Canvas::text_width(x_label)) / 2, c.height() - 16, x_label, kBlack);
  c.text(4, y1 - 14, y_label, kBlack);
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi == lo) hi = lo + 1.0;
  }
};

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return v.empty() ? std::numeric_limits<double>::quiet_NaN() : s / static_cast<double>(v.size());
}

}  // namespace

Canvas::Canvas(int width, int height, Rgb background) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("canvas dimensions must be positive");
  pixels_.assign(static_cast<std::size_t>(width) * height, background);
}

void Canvas::set(int x, int y, Rgb color) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  pixels_[static_cast<std::size_t>(y) * width_ + x] = color;
}

void Canvas::fill(int x, int y, int w, int h, Rgb color) {
  for (int yy = y; yy < y + h; ++yy) {
    for (int xx = x; xx < x + w; ++xx) set(xx, yy, color);
  }
}

void Canvas::line(int x0, int y0, int x1, int y1, Rgb color) {
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    set(x0, y0, color);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) err += dy, x0 += sx;
    if (e2 <= dx) err += dx, y0 += sy;
  }
}

void Canvas::text(int x, int y, std::string_view s, Rgb color, int scale) {
  for (const char ch : s) {
    if (const std::uint8_t* rows = glyph_rows(ch)) {
      for (int r = 0; r < 7; ++r) {
        for (int col = 0; col < 5; ++col) {
          if (rows[r] & (0x10 >> col)) fill(x + col * scale, y + r * scale, scale, scale, color);
        }
      }
    }
    x += 6 * scale;
  }
}

void Canvas::save_png(const std::filesystem::path& file) const {
  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(file.string().c_str(), "wb"), &std::fclose);
  if (!fp) throw std::runtime_error("cannot write " + file.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("libpng failed writing " + file.string());
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width_), static_cast<png_uint_32>(height_), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_byte> row(static_cast<std::size_t>(width_) * 3);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const Rgb p = at(x, y);
      row[3 * x] = p.r;
      row[3 * x + 1] = p.g;
      row[3 * x + 2] = p.b;
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

Rgb color_ramp(double t) {
  static constexpr Rgb stops[] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  if (!std::isfinite(t)) t = 0.0;
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int i = std::min(3, static_cast<int>(t));
  const double f = t - i;
  auto mix = [f](std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>(std::lround(a + (b - a) * f)); };
  return {mix(stops[i].r, stops[i + 1].r), mix(stops[i].g, stops[i + 1].g), mix(stops[i].b, stops[i + 1].b)};
}

void draw_heatmap(const Heatmap& map, const std::filesystem::path& file) {
  if (map.xs.empty() || map.ys.empty()) throw std::invalid_argument("heatmap needs non-empty axes");
  if (map.values.size() != map.xs.size() * map.ys.size()) throw std::invalid_argument("heatmap value count mismatch");
  Canvas c(640, 560);
  Frame f;
  f.right = 110;
  axes_frame(c, f, map.title, map.x_label, map.y_label);
  Range range;
  for (const double v : map.values) range.add(v);
  range.settle();

  const int x0 = f.left + 1, y0 = c.height() - f.bottom - 1;
  const int w = c.width() - f.right - x0, h = y0 - f.top;
  const int nx = static_cast<int>(map.xs.size()), ny = static_cast<int>(map.ys.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double v = map.values[static_cast<std::size_t>(j) * nx + i];
      const int cx = x0 + i * w / nx, cw = x0 + (i + 1) * w / nx - cx;
      const int cy = y0 - (j + 1) * h / ny, ch = y0 - j * h / ny - cy;
      c.fill(cx, cy, cw, ch, std::isfinite(v) ? color_ramp((v - range.lo) / (range.hi - range.lo)) : kGrey);
    }
  }
  for (int i = 0; i < nx; i += std::max(1, nx / 5)) {
    c.text(x0 + i * w / nx, y0 + 6, tick_label(map.xs[static_cast<std::size_t>(i)]), kBlack);
  }
  for (int j = 0; j < ny; j += std::max(1, ny / 5)) {
    c.text(4, y0 - j * h / ny - 10, tick_label(map.ys[static_cast<std::size_t>(j)]), kBlack);
  }
  const int lx = c.width() - f.right + 20;
  for (int y = 0; y < h; ++y) c.fill(lx, f.top + y, 16, 1, color_ramp(1.0 - static_cast<double>(y) / h));
  c.text(lx + 20, f.top, tick_label(range.hi), kBlack);
  c.text(lx + 20, f.top + h - 7, tick_label(range.lo), kBlack);
  c.save_png(file);
}

void draw_series(std::span<const Series> series, std::string_view title, std::string_view x_label,
                 std::string_view y_label, const std::filesystem::path& file) {
  if (series.empty()) throw std::invalid_argument("series plot needs at least one series");
  Range rx, ry;
  for (const Series& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty()) throw std::invalid_argument("series '" + s.label + "' is malformed");
    for (const double v : s.x) rx.add(v);
    for (const double v : s.y) ry.add(v);
  }
  rx.settle();
  ry.settle();
  ry.lo = std::min(ry.lo, 0.0);
  Canvas c(720, 480);
  Frame f;
  f.right = 150;
  axes_frame(c, f, title, x_label, y_label);
  const int x0 = f.left, y0 = c.height() - f.bottom;
  const int w = c.width() - f.right - x0, h = y0 - f.top;
  auto px = [&](double v) { return x0 + static_cast<int>(std::lround((v - rx.lo) / (rx.hi - rx.lo) * w)); };
  auto py = [&](double v) { return y0 - static_cast<int>(std::lround((v - ry.lo) / (ry.hi - ry.lo) * h)); };
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Rgb col = kPalette[k % std::size(kPalette)];
    const Series& s = series[k];
    for (std::size_t i = 0; i + 1 < s.x.size(); ++i) {
      if (std::isfinite(s.y[i]) && std::isfinite(s.y[i + 1])) c.line(px(s.x[i]), py(s.y[i]), px(s.x[i + 1]), py(s.y[i + 1]), col);
    }
    if (s.x.size() <= 40) {
      for (std::size_t i = 0; i < s.x.size(); ++i) c.fill(px(s.x[i]) - 2, py(s.y[i]) - 2, 5, 5, col);
    }
    const int ly = f.top + 14 * static_cast<int>(k);
    c.fill(c.width() - f.right + 10, ly, 12, 7, col);
    c.text(c.width() - f.right + 26, ly, s.label, kBlack);
  }
  c.text(x0, y0 + 6, tick_label(rx.lo), kBlack);
  c.text(x0 + w - Canvas::text_width(tick_label(rx.hi)), y0 + 6, tick_label(rx.hi), kBlack);
  c.text(4, y0 - 7, tick_label(ry.lo), kBlack);
  c.text(4, f.top, tick_label(ry.hi), kBlack);
  c.save_png(file);
}

void draw_bars(std::span<const Bar> bars, std::string_view title, std::string_view y_label,
               const std::filesystem::path& file) {
  if (bars.empty()) throw std::invalid_argument("bar plot needs at least one bar");
  Range ry;
  ry.add(0.0);
  for (const Bar& b : bars) {
    ry.add(b.mean + b.spread);
    ry.add(b.mean - b.spread);
  }
  ry.settle();
  Canvas c(std::max(480, 80 + 60 * static_cast<int>(bars.size())), 480);
  Frame f;
  axes_frame(c, f, title, "", y_label);
  const int x0 = f.left, y0 = c.height() - f.bottom;
  const int w = c.width() - f.right - x0, h = y0 - f.top;
  auto py = [&](double v) { return y0 - static_cast<int>(std::lround((v - ry.lo) / (ry.hi - ry.lo) * h)); };
  const int slot = w / static_cast<int>(bars.size());
  for (std::size_t k = 0; k < bars.size(); ++k) {
    const Bar& b = bars[k];
    const int cx = x0 + slot * static_cast<int>(k) + slot / 2;
    const int top = py(b.mean), base = py(0.0);
    c.fill(cx - slot / 4, std::min(top, base), slot / 2, std::abs(base - top) + 1, kPalette[0]);
    c.line(cx, py(b.mean - b.spread), cx, py(b.mean + b.spread), kBlack);
    c.line(cx - 4, py(b.mean + b.spread), cx + 4, py(b.mean + b.spread), kBlack);
    c.line(cx - 4, py(b.mean - b.spread), cx + 4, py(b.mean - b.spread), kBlack);
    c.text(cx - Canvas::text_width(b.label) / 2, y0 + 6, b.label, kBlack);
  }
  c.text(4, y0 - 7, tick_label(ry.lo), kBlack);
  c.text(4, f.top, tick_label(ry.hi), kBlack);
  c.save_png(file);
}

PlotKind parse_plot_kind(std::string_view name) {
  if (name == "heatmap") return PlotKind::kHeatmap;
  if (name == "series") return PlotKind::kSeries;
  if (name == "bars") return PlotKind::kBars;
  throw std::invalid_argument("unknown plot kind '" + std::string(name) + "'");
}

void render_plot(const CsvTable& table, PlotKind kind, const PlotOptions& options,
                 const std::filesystem::path& file) {
  if (table.size() == 0) throw std::invalid_argument("plot input has no rows");
  // Sweep tables mix models; heatmaps and plain series use the main model only.
  const auto model = table.find("model");
  auto keep = [&](std::size_t r) { return !model || table.rows()[r][*model] != "baseline"; };

  if (kind == PlotKind::kHeatmap) {
    const std::size_t cx = table.column(options.x), cy = table.column(options.y), cv = table.column(options.value);
    std::map<std::pair<double, double>, std::vector<double>> cells;
    std::map<double, int> xs, ys;
    for (std::size_t r = 0; r < table.size(); ++r) {
      if (!keep(r)) continue;
      const double x = table.number(r, cx), y = table.number(r, cy);
      cells[{x, y}].push_back(table.number(r, cv));
      xs[x];
      ys[y];
    }
    Heatmap map;
    map.title = options.title.empty() ? options.value : options.title;
    map.x_label = options.x;
    map.y_label = options.y;
    for (const auto& [x, _] : xs) map.xs.push_back(x);
    for (const auto& [y, _] : ys) map.ys.push_back(y);
    for (const double y : map.ys) {
      for (const double x : map.xs) {
        const auto it = cells.find({x, y});
        map.values.push_back(it == cells.end() ? std::numeric_limits<double>::quiet_NaN() : mean_of(it->second));
      }
    }
    draw_heatmap(map, file);
    return;
  }

  if (kind == PlotKind::kSeries) {
    const std::size_t cx = table.column(options.x), cv = table.column(options.value);
    const std::optional<std::size_t> cg =
        options.group.empty() ? std::nullopt : std::optional<std::size_t>(table.column(options.group));
    std::map<std::string, std::map<double, std::vector<double>>> groups;
    for (std::size_t r = 0; r < table.size(); ++r) {
      if (!cg && !keep(r)) continue;
      const std::string g = cg ? table.rows()[r][*cg] : options.value;
      groups[g][table.number(r, cx)].push_back(table.number(r, cv));
    }
    std::vector<Series> series;
    for (const auto& [name, points] : groups) {
      Series s;
      s.label = cg ? options.group + "=" + name : name;
      for (const auto& [x, ys] : points) {
        s.x.push_back(x);
        s.y.push_back(mean_of(ys));
      }
      series.push_back(std::move(s));
    }
    draw_series(series, options.title.empty() ? options.value : options.title, options.x, options.value, file);
    return;
  }

  std::vector<Bar> bars;
  auto summarize = [](std::string label, const std::vector<double>& v) {
    Bar b;
    b.label = std::move(label);
    b.mean = mean_of(v);
    double ss = 0.0;
    for (const double x : v) ss += (x - b.mean) * (x - b.mean);
    b.spread = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    return b;
  };
  if (!options.columns.empty()) {
    for (const std::string& name : options.columns) {
      const std::size_t col = table.column(name);
      std::vector<double> v;
      for (std::size_t r = 0; r < table.size(); ++r) {
        if (keep(r)) v.push_back(table.number(r, col));
      }
      bars.push_back(summarize(name, v));
    }
  } else {
    const std::size_t cg = table.column(options.group), cv = table.column(options.value);
    std::map<double, std::vector<double>> groups;
    for (std::size_t r = 0; r < table.size(); ++r) {
      if (keep(r)) groups[table.number(r, cg)].push_back(table.number(r, cv));
    }
    for (const auto& [g, v] : groups) bars.push_back(summarize(format_number(g), v));
  }
  draw_bars(bars, options.title.empty() ? options.value : options.title, options.value, file);
}

}  // namespace hgmp

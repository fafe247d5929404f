#include "salhi/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace salhi {

std::string format_number(double value) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + tmp.string());
    }
    out << content;
    if (!out.flush()) {
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

CsvTable sweep_to_table(const SweepResult& result) {
  CsvTable table;
  table.header = {"swept_value",       "visibility_su",     "visibility_mz",
                  "snr_su",            "snr_mz",            "optimal_g2_for_v",
                  "optimal_g2_for_snr", "condition_residual", "exact_flag"};
  table.rows.reserve(result.rows.size());
  for (const auto& r : result.rows) {
    table.rows.push_back({format_number(r.swept_value), format_number(r.visibility_su),
                          format_number(r.visibility_mz), format_number(r.snr_su),
                          format_number(r.snr_mz), format_number(r.optimal_g2_for_v),
                          format_number(r.optimal_g2_for_snr),
                          format_number(r.condition_residual), r.exact ? "1" : "0"});
  }
  return table;
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 56.0;

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

bool plottable(double v) { return std::isfinite(v) && std::abs(v) < 1e300; }

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<SvgSeries>& series) {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool have = false;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!plottable(x) || !plottable(y)) continue;
      if (!have) {
        xmin = xmax = x;
        ymin = ymax = y;
        have = true;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (xmax - xmin <= 0.0) xmax = xmin + 1.0;
  if (ymax - ymin <= 0.0) ymax = ymin + 1.0;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto px = [&](double x) {
    return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w;
  };
  const auto py = [&](double y) {
    return kMarginTop + (1.0 - (y - ymin) / (ymax - ymin)) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(kWidth) +
         "\" height=\"" + coord(kHeight) + "\" viewBox=\"0 0 " + coord(kWidth) + " " +
         coord(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + coord(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" +
         title + "</text>\n";

  // Frame.
  svg += "<rect x=\"" + coord(kMarginLeft) + "\" y=\"" + coord(kMarginTop) +
         "\" width=\"" + coord(plot_w) + "\" height=\"" + coord(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / kTicks;
    const double gx = px(fx);
    svg += "<line x1=\"" + coord(gx) + "\" y1=\"" + coord(kMarginTop + plot_h) +
           "\" x2=\"" + coord(gx) + "\" y2=\"" + coord(kMarginTop + plot_h + 6) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + coord(gx) + "\" y=\"" + coord(kMarginTop + plot_h + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           tick_label(fx) + "</text>\n";

    const double fy = ymin + (ymax - ymin) * i / kTicks;
    const double gy = py(fy);
    svg += "<line x1=\"" + coord(kMarginLeft - 6) + "\" y1=\"" + coord(gy) +
           "\" x2=\"" + coord(kMarginLeft) + "\" y2=\"" + coord(gy) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + coord(kMarginLeft - 10) + "\" y=\"" + coord(gy + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           tick_label(fy) + "</text>\n";
  }

  svg += "<text x=\"" + coord(kMarginLeft + plot_w / 2) + "\" y=\"" +
         coord(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         x_label + "</text>\n";
  svg += "<text x=\"16\" y=\"" + coord(kMarginTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " +
         coord(kMarginTop + plot_h / 2) + ")\">" + y_label + "</text>\n";

  double legend_y = kMarginTop + 14.0;
  for (const auto& s : series) {
    std::string points;
    bool broken = true;
    for (const auto& [x, y] : s.points) {
      if (!plottable(x) || !plottable(y)) {
        broken = true;
        continue;
      }
      if (!broken) points += ' ';
      points += coord(px(x)) + "," + coord(py(y));
      broken = false;
    }
    svg += "<polyline fill=\"none\" stroke=\"" + s.color +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    svg += "<line x1=\"" + coord(kMarginLeft + plot_w - 150) + "\" y1=\"" +
           coord(legend_y - 4) + "\" x2=\"" + coord(kMarginLeft + plot_w - 126) +
           "\" y2=\"" + coord(legend_y - 4) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + coord(kMarginLeft + plot_w - 120) + "\" y=\"" +
           coord(legend_y) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + s.label + "</text>\n";
    legend_y += 16.0;
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace salhi

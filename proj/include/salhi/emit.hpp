#pragma once

#include <string>
#include <utility>
#include <vector>

#include "salhi/optimize.hpp"

namespace salhi {

/// Locale-independent shortest-faithful formatting at 12 significant digits.
std::string format_number(double value);

/// Writes content to path atomically (temp file in the same directory, then
/// rename). Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CsvTable& table);

CsvTable sweep_to_table(const SweepResult& result);

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

/// Minimal self-contained line plot: axes, ticks, legend, one polyline per
/// series. Non-finite and sentinel points are skipped.
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<SvgSeries>& series);

}  // namespace salhi

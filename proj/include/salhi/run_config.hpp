#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "salhi/optimize.hpp"
#include "salhi/types.hpp"

namespace salhi {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json, Svg };

struct SweepRequest {
  SweptParameter swept = SweptParameter::LossL;
  SweepGrid grid{0.6, 0.96, 37};
  DetectionScheme scheme = DetectionScheme::Intensity;
  Objective objective = Objective::None;
};

struct Fig3Panel {
  double G1 = 3.0;
  double eta = 0.4;
};

struct FigureOptions {
  // Illustrative panel parameter sets; override in the config file.
  std::vector<Fig3Panel> fig3_panels{{2.0, 0.2}, {3.0, 0.4}, {4.0, 0.6}};
  int points = 37;  // grid resolution of the figure curves
};

struct RunConfig {
  InterferometerConfig interferometer;
  double g2_min = 1.0;
  double g2_max = 10.0;
  std::optional<SweepRequest> sweep;
  FigureOptions figure;
  std::string out_dir = "out";
  std::set<OutputFormat> formats{OutputFormat::Csv, OutputFormat::Svg};
  std::uint64_t rng_seed = 33;
};

RunConfig default_run_config();

/// Parses the JSON config file. Unknown keys anywhere are a hard error; all
/// sections are optional and default to the paper baseline. Throws
/// ConfigError with the offending JSON path in the message.
RunConfig load_run_config(const std::string& path);

/// Parses from an in-memory JSON string (same contract as load_run_config).
RunConfig parse_run_config(const std::string& json_text);

/// Serializes the resolved config in the exact schema the parser accepts, so
/// emitted JSON round-trips.
std::string run_config_to_json(const RunConfig& rc);

}  // namespace salhi

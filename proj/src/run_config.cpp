#include "salhi/run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace salhi {

using nlohmann::json;

namespace {

void require_known_keys(const json& obj, const std::string& path,
                        std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown key \"" + path + key + "\"");
    }
  }
}

double get_number(const json& obj, const std::string& path, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError("\"" + path + key + "\" must be a number");
  }
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key,
            int fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError("\"" + path + key + "\" must be an integer");
  }
  return v.get<int>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) {
    throw ConfigError("\"" + path + key + "\" must be a string");
  }
  return v.get<std::string>();
}

GainFactor parse_stage(const json& obj, const std::string& path,
                       const GainFactor& fallback) {
  require_known_keys(obj, path, {"G", "r"});
  if (obj.contains("G") && obj.contains("r")) {
    throw ConfigError("\"" + path + "\" must set exactly one of G or r");
  }
  try {
    if (obj.contains("r")) {
      return make_gain(get_number(obj, path, "r", 0.0));
    }
    if (obj.contains("G")) {
      return gain_from_G(get_number(obj, path, "G", 1.0));
    }
  } catch (const std::domain_error& e) {
    throw ConfigError("\"" + path + "\": " + e.what());
  }
  return fallback;
}

SweptParameter parse_swept(const std::string& name, const std::string& path) {
  if (name == "l") return SweptParameter::LossL;
  if (name == "eta") return SweptParameter::LossEta;
  if (name == "g2") return SweptParameter::GainG2;
  if (name == "phi") return SweptParameter::Phi;
  throw ConfigError("\"" + path + "swept\" must be one of l, eta, g2, phi");
}

DetectionScheme parse_scheme(const std::string& name, const std::string& path) {
  if (name == "id") return DetectionScheme::Intensity;
  if (name == "bhd") return DetectionScheme::Homodyne;
  throw ConfigError("\"" + path + "scheme\" must be id or bhd");
}

Objective parse_objective(const std::string& name, const std::string& path) {
  if (name == "none") return Objective::None;
  if (name == "visibility") return Objective::Visibility;
  if (name == "snr") return Objective::Snr;
  if (name == "both") return Objective::Both;
  throw ConfigError("\"" + path +
                    "objective\" must be one of none, visibility, snr, both");
}

const char* swept_name(SweptParameter p) {
  switch (p) {
    case SweptParameter::LossL: return "l";
    case SweptParameter::LossEta: return "eta";
    case SweptParameter::GainG2: return "g2";
    case SweptParameter::Phi: return "phi";
  }
  return "l";
}

const char* scheme_name(DetectionScheme s) {
  return s == DetectionScheme::Intensity ? "id" : "bhd";
}

const char* objective_name(Objective o) {
  switch (o) {
    case Objective::None: return "none";
    case Objective::Visibility: return "visibility";
    case Objective::Snr: return "snr";
    case Objective::Both: return "both";
  }
  return "none";
}

RunConfig parse_json(const json& root) {
  if (!root.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }
  require_known_keys(root, "",
                     {"stage1", "stage2", "losses", "seed", "probe", "g2_bounds",
                      "sweep", "figure", "out_dir", "formats", "rng_seed"});

  RunConfig rc = default_run_config();
  auto& itf = rc.interferometer;

  if (root.contains("stage1")) {
    rc.interferometer.stage1 = parse_stage(root.at("stage1"), "stage1.", itf.stage1);
  }
  if (root.contains("stage2")) {
    rc.interferometer.stage2 = parse_stage(root.at("stage2"), "stage2.", itf.stage2);
  }
  if (root.contains("losses")) {
    const auto& obj = root.at("losses");
    require_known_keys(obj, "losses.", {"l", "eta"});
    itf.losses.l = get_number(obj, "losses.", "l", itf.losses.l);
    itf.losses.eta = get_number(obj, "losses.", "eta", itf.losses.eta);
  }
  if (root.contains("seed")) {
    const auto& obj = root.at("seed");
    require_known_keys(obj, "seed.", {"kind", "mean_photon_number", "alpha_phase"});
    const std::string kind = get_string(obj, "seed.", "kind", "optical");
    if (kind == "optical") {
      itf.seed.kind = SeedKind::Optical;
    } else if (kind == "atomic") {
      itf.seed.kind = SeedKind::Atomic;
    } else {
      throw ConfigError("\"seed.kind\" must be optical or atomic");
    }
    itf.seed.mean_photon_number =
        get_number(obj, "seed.", "mean_photon_number", itf.seed.mean_photon_number);
    itf.seed.alpha_phase =
        get_number(obj, "seed.", "alpha_phase", itf.seed.alpha_phase);
  }
  if (root.contains("probe")) {
    const auto& obj = root.at("probe");
    require_known_keys(obj, "probe.", {"phi", "delta", "dark_offset"});
    itf.probe.dark_offset =
        get_number(obj, "probe.", "dark_offset", itf.probe.dark_offset);
    itf.probe.phi = get_number(obj, "probe.", "phi", kPi + itf.probe.dark_offset);
    itf.probe.delta = get_number(obj, "probe.", "delta", itf.probe.delta);
  }
  if (root.contains("g2_bounds")) {
    const auto& v = root.at("g2_bounds");
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw ConfigError("\"g2_bounds\" must be an array of two numbers");
    }
    rc.g2_min = v[0].get<double>();
    rc.g2_max = v[1].get<double>();
    if (!(rc.g2_min >= 1.0 && rc.g2_min < rc.g2_max)) {
      throw ConfigError("\"g2_bounds\" must satisfy 1 <= min < max");
    }
  }
  if (root.contains("sweep")) {
    const auto& obj = root.at("sweep");
    require_known_keys(obj, "sweep.",
                       {"swept", "min", "max", "points", "scheme", "objective"});
    SweepRequest req;
    req.swept = parse_swept(get_string(obj, "sweep.", "swept", "l"), "sweep.");
    req.grid.min = get_number(obj, "sweep.", "min", 0.6);
    req.grid.max = get_number(obj, "sweep.", "max", 0.96);
    req.grid.points = get_int(obj, "sweep.", "points", 37);
    if (req.grid.points < 2) {
      throw ConfigError("\"sweep.points\" must be >= 2");
    }
    req.scheme = parse_scheme(get_string(obj, "sweep.", "scheme", "id"), "sweep.");
    req.objective =
        parse_objective(get_string(obj, "sweep.", "objective", "none"), "sweep.");
    rc.sweep = req;
  }
  if (root.contains("figure")) {
    const auto& obj = root.at("figure");
    require_known_keys(obj, "figure.", {"fig3_panels", "points"});
    rc.figure.points = get_int(obj, "figure.", "points", rc.figure.points);
    if (rc.figure.points < 2) {
      throw ConfigError("\"figure.points\" must be >= 2");
    }
    if (obj.contains("fig3_panels")) {
      const auto& panels = obj.at("fig3_panels");
      if (!panels.is_array() || panels.empty()) {
        throw ConfigError("\"figure.fig3_panels\" must be a non-empty array");
      }
      rc.figure.fig3_panels.clear();
      for (std::size_t i = 0; i < panels.size(); ++i) {
        const auto& p = panels[i];
        const std::string path = "figure.fig3_panels[" + std::to_string(i) + "].";
        if (!p.is_object()) {
          throw ConfigError("\"figure.fig3_panels\" entries must be objects");
        }
        require_known_keys(p, path, {"G1", "eta"});
        Fig3Panel panel;
        panel.G1 = get_number(p, path, "G1", 3.0);
        panel.eta = get_number(p, path, "eta", 0.4);
        rc.figure.fig3_panels.push_back(panel);
      }
    }
  }
  rc.out_dir = get_string(root, "", "out_dir", rc.out_dir);
  if (root.contains("formats")) {
    const auto& v = root.at("formats");
    if (!v.is_array()) {
      throw ConfigError("\"formats\" must be an array");
    }
    rc.formats.clear();
    for (const auto& f : v) {
      if (!f.is_string()) throw ConfigError("\"formats\" entries must be strings");
      const std::string name = f.get<std::string>();
      if (name == "csv") {
        rc.formats.insert(OutputFormat::Csv);
      } else if (name == "json") {
        rc.formats.insert(OutputFormat::Json);
      } else if (name == "svg") {
        rc.formats.insert(OutputFormat::Svg);
      } else {
        throw ConfigError("\"formats\" entries must be csv, json or svg");
      }
    }
  }
  if (root.contains("rng_seed")) {
    const auto& v = root.at("rng_seed");
    if (!v.is_number_unsigned() && !v.is_number_integer()) {
      throw ConfigError("\"rng_seed\" must be an integer");
    }
    rc.rng_seed = v.get<std::uint64_t>();
  }

  const auto problems = validate_config(rc.interferometer);
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
  return rc;
}

}  // namespace

RunConfig default_run_config() {
  RunConfig rc;
  rc.interferometer = default_config();
  return rc;
}

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }
  return parse_json(root);
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string run_config_to_json(const RunConfig& rc) {
  const auto& itf = rc.interferometer;
  json root;
  root["stage1"] = {{"r", itf.stage1.r}};
  root["stage2"] = {{"r", itf.stage2.r}};
  root["losses"] = {{"l", itf.losses.l}, {"eta", itf.losses.eta}};
  root["seed"] = {
      {"kind", itf.seed.kind == SeedKind::Optical ? "optical" : "atomic"},
      {"mean_photon_number", itf.seed.mean_photon_number},
      {"alpha_phase", itf.seed.alpha_phase}};
  root["probe"] = {{"phi", itf.probe.phi},
                   {"delta", itf.probe.delta},
                   {"dark_offset", itf.probe.dark_offset}};
  root["g2_bounds"] = {rc.g2_min, rc.g2_max};
  if (rc.sweep) {
    root["sweep"] = {{"swept", swept_name(rc.sweep->swept)},
                     {"min", rc.sweep->grid.min},
                     {"max", rc.sweep->grid.max},
                     {"points", rc.sweep->grid.points},
                     {"scheme", scheme_name(rc.sweep->scheme)},
                     {"objective", objective_name(rc.sweep->objective)}};
  }
  json panels = json::array();
  for (const auto& p : rc.figure.fig3_panels) {
    panels.push_back({{"G1", p.G1}, {"eta", p.eta}});
  }
  root["figure"] = {{"fig3_panels", panels}, {"points", rc.figure.points}};
  root["out_dir"] = rc.out_dir;
  json formats = json::array();
  for (const auto f : rc.formats) {
    formats.push_back(f == OutputFormat::Csv    ? "csv"
                      : f == OutputFormat::Json ? "json"
                                                : "svg");
  }
  root["formats"] = formats;
  root["rng_seed"] = rc.rng_seed;
  return root.dump(2);
}

}  // namespace salhi

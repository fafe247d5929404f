#include "salhi/commands.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "salhi/analytic.hpp"
#include "salhi/emit.hpp"
#include "salhi/moments.hpp"
#include "salhi/optimize.hpp"

namespace salhi {

using nlohmann::json;

namespace {

const char* flag_name(EvalFlag flag) {
  switch (flag) {
    case EvalFlag::Ok: return "ok";
    case EvalFlag::UndefinedFringe: return "undefined-fringe";
    case EvalFlag::Infinite: return "infinite";
  }
  return "ok";
}

json evaluated_json(const Evaluated& e) {
  return {{"value", e.value}, {"flag", flag_name(e.flag)}};
}

std::string out_path(const RunConfig& rc, const std::string& file) {
  return (std::filesystem::path(rc.out_dir) / file).string();
}

void maybe_write_json(const RunConfig& rc, const std::string& file,
                      const json& results, std::ostream& out) {
  if (!rc.formats.count(OutputFormat::Json)) return;
  json root;
  root["config"] = json::parse(run_config_to_json(rc));
  root["results"] = results;
  const std::string path = out_path(rc, file);
  write_file_atomic(path, root.dump(2) + "\n");
  out << "wrote " << path << "\n";
}

struct FigureData {
  CsvTable table;
  std::vector<SvgSeries> series;
  std::string title, x_label, y_label;
};

void emit_figure(const RunConfig& rc, const std::string& name, const FigureData& fig,
                 std::ostream& out) {
  if (rc.formats.count(OutputFormat::Csv)) {
    const std::string path = out_path(rc, name + ".csv");
    write_file_atomic(path, to_csv(fig.table));
    out << "wrote " << path << "\n";
  }
  if (rc.formats.count(OutputFormat::Svg)) {
    const std::string path = out_path(rc, name + ".svg");
    write_file_atomic(path,
                      svg_line_plot(fig.title, fig.x_label, fig.y_label, fig.series));
    out << "wrote " << path << "\n";
  }
}

InterferometerConfig with_losses(InterferometerConfig cfg, double l) {
  cfg.losses.l = l;
  return cfg;
}

}  // namespace

int cmd_visibility(const RunConfig& rc, std::ostream& out) {
  const auto& cfg = rc.interferometer;

  InterferometerConfig optical = cfg;
  optical.seed.kind = SeedKind::Optical;
  InterferometerConfig atomic = cfg;
  atomic.seed.kind = SeedKind::Atomic;

  const Evaluated v_opt = visibility_su(optical);
  const Evaluated v_atom = visibility_su(atomic);
  const Evaluated v_mz = visibility_mz(cfg.losses);
  const double res_id = condition_residual(cfg, DetectionScheme::Intensity);
  const double res_bhd = condition_residual(cfg, DetectionScheme::Homodyne);

  out << "visibility (G1=" << format_number(cfg.stage1.G)
      << ", G2=" << format_number(cfg.stage2.G)
      << ", l=" << format_number(cfg.losses.l)
      << ", eta=" << format_number(cfg.losses.eta) << ")\n";
  out << "  V_SU optical seed   " << format_number(v_opt.value) << "  ["
      << flag_name(v_opt.flag) << "]\n";
  out << "  V_SU atomic seed    " << format_number(v_atom.value) << "  ["
      << flag_name(v_atom.flag) << "]\n";
  out << "  V_MZ                " << format_number(v_mz.value) << "  ["
      << flag_name(v_mz.flag) << "]\n";
  out << "  condition residual (ID)  " << format_number(res_id) << "\n";
  out << "  condition residual (BHD) " << format_number(res_bhd) << "\n";

  maybe_write_json(rc, "visibility.json",
                   json{{"v_su_optical", evaluated_json(v_opt)},
                        {"v_su_atomic", evaluated_json(v_atom)},
                        {"v_mz", evaluated_json(v_mz)},
                        {"condition_residual_id", res_id},
                        {"condition_residual_bhd", res_bhd}},
                   out);
  return kExitOk;
}

int cmd_snr(const RunConfig& rc, std::ostream& out) {
  const auto& cfg = rc.interferometer;
  const Evaluated id = snr_su_id(cfg);
  const Evaluated bhd = snr_su_bhd(cfg);
  const Evaluated mz = snr_mz(cfg.losses, cfg.stage1, cfg.probe,
                              cfg.seed.mean_photon_number);
  const Evaluated id_numeric =
      snr_numeric(cfg, DetectionScheme::Intensity, OutputChannel::Optical);

  out << "snr (phi=" << format_number(cfg.probe.phi)
      << ", delta=" << format_number(cfg.probe.delta)
      << ", N=" << format_number(cfg.seed.mean_photon_number) << ")\n";
  out << "  SNR_SU intensity detection  " << format_number(id.value) << "  ["
      << flag_name(id.flag) << "]\n";
  out << "  SNR_SU homodyne (dark)      " << format_number(bhd.value) << "  ["
      << flag_name(bhd.flag) << "]\n";
  out << "  SNR_MZ                      " << format_number(mz.value) << "  ["
      << flag_name(mz.flag) << "]\n";
  out << "  moment-engine cross-check   " << format_number(id_numeric.value)
      << "  [" << flag_name(id_numeric.flag) << "]\n";

  maybe_write_json(rc, "snr.json",
                   json{{"snr_su_id", evaluated_json(id)},
                        {"snr_su_bhd", evaluated_json(bhd)},
                        {"snr_mz", evaluated_json(mz)},
                        {"snr_su_id_moments", evaluated_json(id_numeric)}},
                   out);
  return kExitOk;
}

int cmd_optimize(const RunConfig& rc, std::ostream& out) {
  const auto& cfg = rc.interferometer;
  const OptimizeOutcome v_id = optimize_g2(cfg, Objective::Visibility,
                                           DetectionScheme::Intensity, rc.g2_min,
                                           rc.g2_max);
  const OptimizeOutcome s_id =
      optimize_g2(cfg, Objective::Snr, DetectionScheme::Intensity, rc.g2_min,
                  rc.g2_max);
  const OptimizeOutcome s_bhd =
      optimize_g2(cfg, Objective::Snr, DetectionScheme::Homodyne, rc.g2_min,
                  rc.g2_max);
  const double l_b = condition_loss(cfg.stage1, cfg.stage2, cfg.losses.eta);
  const double id_gap = std::abs(v_id.stage2.G - s_id.stage2.G);
  const double bhd_gap = std::abs(v_id.stage2.G - s_bhd.stage2.G);

  out << "optimize G2 in [" << format_number(rc.g2_min) << ", "
      << format_number(rc.g2_max) << "] at l=" << format_number(cfg.losses.l)
      << ", eta=" << format_number(cfg.losses.eta) << "\n";
  out << "  visibility:    G2* = " << format_number(v_id.stage2.G)
      << "  V* = " << format_number(v_id.value)
      << "  exact=" << (v_id.exact ? 1 : 0) << "\n";
  out << "  SNR (ID):      G2* = " << format_number(s_id.stage2.G)
      << "  SNR* = " << format_number(s_id.value) << "\n";
  out << "  SNR (BHD):     G2* = " << format_number(s_bhd.stage2.G)
      << "  SNR* = " << format_number(s_bhd.value) << "\n";
  out << "  |G2*_V - G2*_SNR| = " << format_number(id_gap)
      << (id_gap <= 1e-3 ? "  (ID optima coincide)" : "  (ID optima differ)")
      << "\n";
  out << "  |G2*_V - G2*_BHD| = " << format_number(bhd_gap)
      << (bhd_gap > 1e-2 ? "  (homodyne optimum diverges)" : "") << "\n";
  out << "  balance loss l_B (current gains) = " << format_number(l_b) << "\n";

  maybe_write_json(
      rc, "optimize.json",
      json{{"g2_for_visibility", v_id.stage2.G},
           {"visibility", v_id.value},
           {"exact", v_id.exact},
           {"g2_for_snr_id", s_id.stage2.G},
           {"snr_id", s_id.value},
           {"g2_for_snr_bhd", s_bhd.stage2.G},
           {"snr_bhd", s_bhd.value},
           {"id_gap", id_gap},
           {"bhd_gap", bhd_gap},
           {"l_b", l_b}},
      out);
  return kExitOk;
}

int cmd_sweep(const RunConfig& rc, std::ostream& out) {
  SweepSpec spec;
  spec.base = rc.interferometer;
  spec.g2_min = rc.g2_min;
  spec.g2_max = rc.g2_max;
  if (rc.sweep) {
    spec.swept = rc.sweep->swept;
    spec.grid = rc.sweep->grid;
    spec.scheme = rc.sweep->scheme;
    spec.objective = rc.sweep->objective;
  } else {
    spec.swept = SweptParameter::LossL;
    spec.grid = {0.6, 0.96, 37};
  }

  const SweepResult result = run_sweep(spec);
  const CsvTable table = sweep_to_table(result);

  if (rc.formats.count(OutputFormat::Csv)) {
    const std::string path = out_path(rc, "sweep.csv");
    write_file_atomic(path, to_csv(table));
    out << "wrote " << path << "\n";
  }
  if (rc.formats.count(OutputFormat::Svg)) {
    SvgSeries vis{"visibility_su", "#1f77b4", {}};
    SvgSeries mz{"visibility_mz", "#000000", {}};
    for (const auto& r : result.rows) {
      vis.points.push_back({r.swept_value, r.visibility_su});
      mz.points.push_back({r.swept_value, r.visibility_mz});
    }
    const std::string path = out_path(rc, "sweep.svg");
    write_file_atomic(path, svg_line_plot("parameter sweep", "swept value",
                                          "visibility", {vis, mz}));
    out << "wrote " << path << "\n";
  }
  maybe_write_json(rc, "sweep.json",
                   json{{"rows", result.rows.size()},
                        {"csv_header", table.header}},
                   out);
  out << "sweep rows: " << result.rows.size() << "\n";
  return kExitOk;
}

namespace {

FigureData make_fig2b(const RunConfig& rc) {
  FigureData fig;
  fig.title = "visibility vs optical loss";
  fig.x_label = "internal loss l";
  fig.y_label = "visibility";

  SweepSpec spec;
  spec.base = rc.interferometer;
  spec.swept = SweptParameter::LossL;
  spec.grid = {0.6, 0.96, rc.figure.points};
  spec.objective = Objective::None;
  const SweepResult res = run_sweep(spec);

  fig.table.header = {"l", "visibility_su", "visibility_mz"};
  SvgSeries su{"V_SU", "#1f77b4", {}};
  SvgSeries mz{"V_MZ", "#000000", {}};
  for (const auto& r : res.rows) {
    fig.table.rows.push_back({format_number(r.swept_value),
                              format_number(r.visibility_su),
                              format_number(r.visibility_mz)});
    su.points.push_back({r.swept_value, r.visibility_su});
    mz.points.push_back({r.swept_value, r.visibility_mz});
  }
  fig.series = {su, mz};
  return fig;
}

FigureData make_fig4a(const RunConfig& rc) {
  FigureData fig;
  fig.title = "optimized visibility vs optical loss";
  fig.x_label = "internal loss l";
  fig.y_label = "optimized visibility";

  fig.table.header = {"l", "v_opt", "g2_opt", "exact_flag"};
  SvgSeries v{"V_opt", "#d62728", {}};
  SvgSeries g2{"G2_opt/10", "#ff7f0e", {}};
  const int points = rc.figure.points;
  for (int i = 0; i < points; ++i) {
    const double l = 0.6 + (0.96 - 0.6) * static_cast<double>(i) / (points - 1);
    InterferometerConfig cfg = rc.interferometer;
    cfg.losses.l = l;
    const OptimizeOutcome o = optimize_g2(cfg, Objective::Visibility,
                                          DetectionScheme::Intensity, rc.g2_min,
                                          rc.g2_max);
    fig.table.rows.push_back({format_number(l), format_number(o.value),
                              format_number(o.stage2.G), o.exact ? "1" : "0"});
    v.points.push_back({l, o.value});
    g2.points.push_back({l, o.stage2.G / 10.0});
  }
  fig.series = {v, g2};
  return fig;
}

std::vector<FigureData> make_fig3(const RunConfig& rc) {
  std::vector<FigureData> figures;
  const int points = rc.figure.points;
  for (std::size_t p = 0; p < rc.figure.fig3_panels.size(); ++p) {
    const auto& panel = rc.figure.fig3_panels[p];
    InterferometerConfig base = rc.interferometer;
    base.stage1 = gain_from_G(panel.G1);
    base.losses.eta = panel.eta;

    FigureData fig;
    fig.title = "panel " + std::to_string(p + 1) + ": G1=" + format_number(panel.G1) +
                ", eta=" + format_number(panel.eta);
    fig.x_label = "internal loss l";
    fig.y_label = "visibility / SNR / G2 ratio";
    fig.table.header = {"l",
                        "visibility_su_before",
                        "visibility_su_after",
                        "visibility_mz",
                        "snr_su_before",
                        "snr_su_after",
                        "snr_mz",
                        "g2_ratio_for_v",
                        "g2_ratio_for_snr",
                        "exact_flag"};

    SvgSeries vb{"V_SU before", "#1f77b4", {}};
    SvgSeries va{"V_SU after", "#d62728", {}};
    SvgSeries vm{"V_MZ", "#000000", {}};
    SvgSeries gr{"G2/G1 (V)", "#ff7f0e", {}};

    for (int i = 0; i < points; ++i) {
      const double l = 0.05 + (0.95 - 0.05) * static_cast<double>(i) / (points - 1);
      const InterferometerConfig cfg = with_losses(base, l);
      const Evaluated v_before = visibility_su(cfg);
      const Evaluated s_before = snr_su_id(cfg);
      const Evaluated v_mz = visibility_mz(cfg.losses);
      const Evaluated s_mz =
          snr_mz(cfg.losses, cfg.stage1, cfg.probe, cfg.seed.mean_photon_number);
      const OptimizeOutcome ov = optimize_g2(cfg, Objective::Visibility,
                                             DetectionScheme::Intensity, rc.g2_min,
                                             rc.g2_max);
      const OptimizeOutcome os = optimize_g2(cfg, Objective::Snr,
                                             DetectionScheme::Intensity, rc.g2_min,
                                             rc.g2_max);
      fig.table.rows.push_back(
          {format_number(l), format_number(v_before.value), format_number(ov.value),
           format_number(v_mz.value), format_number(s_before.value),
           format_number(os.value), format_number(s_mz.value),
           format_number(ov.stage2.G / cfg.stage1.G),
           format_number(os.stage2.G / cfg.stage1.G), ov.exact ? "1" : "0"});
      vb.points.push_back({l, v_before.value});
      va.points.push_back({l, ov.value});
      vm.points.push_back({l, v_mz.value});
      gr.points.push_back({l, ov.stage2.G / cfg.stage1.G});
    }
    fig.series = {vb, va, vm, gr};
    figures.push_back(std::move(fig));
  }
  return figures;
}

}  // namespace

int cmd_figure(const std::string& name, const RunConfig& rc, std::ostream& out) {
  if (name == "fig2b") {
    emit_figure(rc, "fig2b", make_fig2b(rc), out);
    return kExitOk;
  }
  if (name == "fig4a") {
    emit_figure(rc, "fig4a", make_fig4a(rc), out);
    return kExitOk;
  }
  if (name == "fig3") {
    const auto figures = make_fig3(rc);
    for (std::size_t p = 0; p < figures.size(); ++p) {
      emit_figure(rc, "fig3_panel" + std::to_string(p + 1), figures[p], out);
    }
    return kExitOk;
  }
  out << "unknown figure \"" << name << "\"; valid names: fig2b, fig3, fig4a\n";
  return kExitUsage;
}

}  // namespace salhi

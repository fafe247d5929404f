#include <clocale>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "salhi/commands.hpp"
#include "salhi/parallel.hpp"
#include "salhi/run_config.hpp"
#include "salhi/verify.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::string formats;
  bool serial = false;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file");
  cmd->add_option("--out", opts.out_dir, "output directory (default: out)");
  cmd->add_option("--format", opts.formats,
                  "comma-separated output formats: csv,json,svg");
  cmd->add_flag("--serial", opts.serial, "run the parallel kernels serially");
  cmd->add_option("--threads", opts.threads, "OpenMP thread cap (0 = default)");
}

salhi::RunConfig resolve_config(const CommonOptions& opts) {
  salhi::RunConfig rc = opts.config_path.empty()
                            ? salhi::default_run_config()
                            : salhi::load_run_config(opts.config_path);
  if (!opts.out_dir.empty()) rc.out_dir = opts.out_dir;
  if (!opts.formats.empty()) {
    rc.formats.clear();
    std::string rest = opts.formats;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string name = rest.substr(0, comma);
      rest = (comma == std::string::npos) ? "" : rest.substr(comma + 1);
      if (name == "csv") {
        rc.formats.insert(salhi::OutputFormat::Csv);
      } else if (name == "json") {
        rc.formats.insert(salhi::OutputFormat::Json);
      } else if (name == "svg") {
        rc.formats.insert(salhi::OutputFormat::Svg);
      } else if (!name.empty()) {
        throw salhi::ConfigError("unknown output format \"" + name + "\"");
      }
    }
  }
  if (opts.serial) salhi::set_execution_mode(salhi::ExecutionMode::Serial);
  salhi::set_thread_count(opts.threads);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");
  CLI::App app{"SU(1,1) atom-light hybrid interferometer toolkit"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string figure_name;
  int grid_size = 100;
  bool mutate = false;

  CLI::App* visibility = app.add_subcommand(
      "visibility", "print visibility and balance-condition residuals");
  add_common(visibility, opts);

  CLI::App* snr = app.add_subcommand("snr", "print the SNR figures");
  add_common(snr, opts);

  CLI::App* optimize =
      app.add_subcommand("optimize", "optimize the recombination gain G2");
  add_common(optimize, opts);

  CLI::App* sweep = app.add_subcommand("sweep", "run the configured sweep");
  add_common(sweep, opts);

  CLI::App* figure = app.add_subcommand("figure", "emit a figure preset");
  figure->add_option("name", figure_name, "fig2b, fig3 or fig4a")->required();
  add_common(figure, opts);

  CLI::App* verify =
      app.add_subcommand("verify", "run the cross-path consistency suite");
  add_common(verify, opts);
  verify->add_option("--grid-size", grid_size, "random configs per batch");
  verify->add_flag("--mutate-cross-term", mutate,
                   "self-test hook: inject a wrong-sign cross term (must fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return salhi::kExitUsage;
  }

  try {
    const salhi::RunConfig rc = resolve_config(opts);
    if (visibility->parsed()) return salhi::cmd_visibility(rc, std::cout);
    if (snr->parsed()) return salhi::cmd_snr(rc, std::cout);
    if (optimize->parsed()) return salhi::cmd_optimize(rc, std::cout);
    if (sweep->parsed()) return salhi::cmd_sweep(rc, std::cout);
    if (figure->parsed()) return salhi::cmd_figure(figure_name, rc, std::cout);
    if (verify->parsed()) {
      salhi::VerifyOptions vo;
      vo.grid_size = grid_size;
      vo.rng_seed = rc.rng_seed;
      vo.mutate_cross_term = mutate;
      return salhi::run_verify(vo, std::cout);
    }
  } catch (const salhi::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return salhi::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return salhi::kExitUsage;
  }
  return salhi::kExitUsage;
}

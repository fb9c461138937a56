#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mqcrb/app/commands.hpp"
#include "mqcrb/errors.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string family;
  std::string state;
  std::string out;
  std::optional<std::size_t> grid_points;
  std::optional<int> fock_cutoff;
  std::optional<double> fd_step;
};

void add_run_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config, "JSON run configuration");
  cmd.add_option("--family", o.family, "parameter family (see list-families)");
  cmd.add_option("--state", o.state, "probe state as JSON, e.g. '{\"kind\":\"thermal\",\"nbar\":1}'");
  cmd.add_option("--out", o.out, "output directory");
  cmd.add_option("--grid-points", o.grid_points, "samples per grid axis");
  cmd.add_option("--fock-cutoff", o.fock_cutoff, "photon-number cutoff per mode");
  cmd.add_option("--fd-step", o.fd_step, "relative finite-difference step");
}

mqcrb::app::RunConfig resolve(const Overrides& o) {
  using mqcrb::app::ConfigError;
  mqcrb::app::RunConfig c;
  if (!o.config.empty()) c = mqcrb::app::load_config(o.config);
  if (!o.family.empty()) c.family = o.family;
  if (!o.state.empty()) {
    try {
      c.state = nlohmann::json::parse(o.state);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("--state: not valid JSON (") + e.what() + ")");
    }
  }
  if (!o.out.empty()) c.out = o.out;
  if (o.grid_points) {
    if (*o.grid_points < 2) throw ConfigError("--grid-points: must be >= 2");
    c.grid_points = o.grid_points;
  }
  if (o.fock_cutoff) c.fock_cutoff = o.fock_cutoff;
  if (o.fd_step) {
    if (!(*o.fd_step > 0.0)) throw ConfigError("--fd-step: must be > 0");
    c.fd_step = *o.fd_step;
  }
  if (c.family.empty()) throw ConfigError("family: missing (use --family or the config file)");
  if (const char* env = std::getenv("MODAL_QCRB_THREADS")) {
    try {
      c.threads = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw ConfigError("MODAL_QCRB_THREADS: expected a non-negative integer");
    }
  }
  // Re-validate the merged config through the same parser the file uses.
  c = mqcrb::app::parse_config(mqcrb::app::config_to_json(c));
  mqcrb::app::validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Fisher information and Cramer-Rao bounds for mode-encoded parameters"};
  app.require_subcommand(1);
  Overrides qfim_opts, att_opts, det_opts;
  auto* qfim = app.add_subcommand("qfim", "QFIM, bounds and report.json");
  add_run_options(*qfim, qfim_opts);
  auto* att = app.add_subcommand("attainability", "pairwise attainability table");
  add_run_options(*att, att_opts);
  auto* det = app.add_subcommand("detection-modes", "export detection and readout modes");
  add_run_options(*det, det_opts);
  auto* list = app.add_subcommand("list-families", "show the family registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      std::cout << mqcrb::app::list_families();
    } else if (qfim->parsed()) {
      const auto b = mqcrb::app::run_qfim(resolve(qfim_opts));
      for (const auto& w : b.warnings) std::cerr << "warning: " << w << "\n";
    } else if (att->parsed()) {
      mqcrb::app::run_attainability(resolve(att_opts));
    } else if (det->parsed()) {
      mqcrb::app::export_detection_modes(resolve(det_opts));
    }
  } catch (const mqcrb::app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mqcrb::app::EngineFailure& e) {
    std::cerr << "engine error in " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

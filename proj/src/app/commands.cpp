#include "mqcrb/app/commands.hpp"

#include <cmath>
#include <sstream>

#include "mqcrb/app/csv.hpp"
#include "mqcrb/attainability.hpp"
#include "mqcrb/errors.hpp"
#include "mqcrb/families.hpp"
#include "mqcrb/generators.hpp"
#include "mqcrb/qfim.hpp"
#include "mqcrb/tolerances.hpp"

namespace mqcrb::app {

namespace {

using nlohmann::json;

template <class F>
auto staged(const char* operation, F&& body) {
  try {
    return body();
  } catch (const mqcrb::Error& e) {
    throw EngineFailure(operation, e.what());
  }
}

std::map<std::string, double> geometry_values(const RunConfig& config) {
  std::map<std::string, double> values;
  if (const FamilyDescriptor* d = find_family(config.family)) {
    for (const auto& field : d->geometry) values[field.name] = field.default_value;
  }
  for (const auto& [key, value] : config.geometry) values[key] = value;
  return values;
}

ParameterFamily family_for(const RunConfig& config) {
  validate(config);
  try {
    return make_family(config.family, config.geometry, {config.grid_points});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const mqcrb::Error& e) {
    throw EngineFailure("make_family", e.what());
  }
}

GeneratorOptions generator_options(const RunConfig& config) {
  return {config.derivative, config.fd_step, EngineOptions{config.threads}};
}

json provenance(const RunConfig& config, const ParameterFamily& family, const DensityState& state) {
  const auto& grid = *family.grid();
  json axes = json::array();
  for (std::size_t d = 0; d < grid.dimensionality(); ++d) {
    const auto axis = grid.axis(d);
    axes.push_back({{"points", axis.size()}, {"min", axis.front()}, {"max", axis.back()}});
  }
  return {
      {"engine_version", engine_version},
      {"tolerances",
       {{"orth", tol::orth},
        {"rank", tol::rank},
        {"zero_rel", tol::zero_rel},
        {"quad", tol::quad},
        {"fd", tol::fd},
        {"herm", tol::herm},
        {"prob", tol::prob},
        {"cutoff", tol::cutoff},
        {"attain", tol::attain},
        {"pinv", tol::pinv},
        {"psd", tol::psd},
        {"trace", tol::trace},
        {"eigvec", tol::eigvec},
        {"symmetry", tol::symmetry},
        {"null_component", tol::null_component}}},
      {"grid", {{"quadrature", "trapezoid"}, {"axes", std::move(axes)}}},
      {"geometry", geometry_values(config)},
      {"fock_cutoff", state.space().cutoff()},
      {"fock_modes", state.space().modes()},
      {"derivative_method", config.derivative == DerivativeMethod::analytic ? "analytic" : "finite-difference"},
      {"fd_step", config.fd_step},
      {"conventions",
       {{"qfim", "populated-mode term plus vacuum leakage over the eigen-decomposed state"},
        {"single_mode_scalar_prefactor", "reduction"},
        {"closed_form_scalar_prefactor", "printed"},
        {"oracle_scalar_prefactor", "reduction"},
        {"attainability", "Tr(rho [L_a, L_b]) / (4i)"},
        {"detection_mode", "(i / w) f^a"},
        {"quadrature", "q = a + a^dag, vacuum variance 1"},
        {"rayleigh_range", "k w0^2 / 2"},
        {"pseudo_inverse_floor", "pinv * |F|"}}},
  };
}

}  // namespace

ReportBundle compute_report(const RunConfig& config) { return compute_report(config, family_for(config)); }

ReportBundle compute_report(const RunConfig& config, const ParameterFamily& family) {
  const StateSpec spec = parse_state(config.state);
  const DensityState state = staged("make_state", [&] {
    try {
      return make_state(spec, family.mode_count(), config.fock_cutoff);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("state: ") + e.what());
    } catch (const StructuralError& e) {
      if (!std::holds_alternative<CustomSpec>(spec)) throw;
      throw ConfigError(std::string("state.density_matrix: ") + e.what());
    }
  });
  const GeneratorCoefficients gens =
      staged("build_generators", [&] { return build_generators(family, family.basis(), generator_options(config)); });
  const Eigen::MatrixXd f = staged("qfim_mode_split", [&] { return qfim_mode_split(state, gens); });

  ReportBundle b;
  b.family = family.name();
  b.state = config.state;
  b.report = staged("crb_bounds", [&] { return crb_bounds(f, config.repetitions, gens.labels); });
  const Attainability att = staged("attainability", [&] { return attainability(state, gens); });
  b.report.attainability = att.commutator;
  b.report.attainable = att.attainable;
  b.commutator_real_residual = att.real_residual;
  for (std::size_t a = 0; a < gens.parameter_count(); ++a) b.report.weights.push_back(gens.weight(a));

  b.mean_photons = number_moments(state).mean;
  b.number_information = staged("number_information", [&] { return number_information(state); });

  const std::size_t n = gens.parameter_count();
  std::vector<DetectionMode> detection;
  if (gens.populated_modes == 1) {
    const auto single = staged("attainability_single_mode", [&] { return attainability_single_mode(gens); });
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = a + 1; c < n; ++c) {
        const auto ia = static_cast<Eigen::Index>(a);
        const auto ic = static_cast<Eigen::Index>(c);
        b.attainability.push_back({gens.labels[a], gens.labels[c], single.im_overlap(ia, ic),
                                   single.normalized_im_overlap(ia, ic), att.commutator(ia, ic),
                                   std::abs(att.commutator(ia, ic)) <= att.threshold(ia, ic)});
      }
    }
    for (std::size_t a = 0; a < n; ++a) detection.push_back(detection_mode(gens.derivatives[a][0], gens.labels[a]));
  }
  b.detection_overlaps = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(detection.size()),
                                                static_cast<Eigen::Index>(detection.size()));
  for (std::size_t a = 0; a < detection.size(); ++a) {
    b.detection.push_back({detection[a].label, detection[a].weight, detection[a].degenerate});
    for (std::size_t c = 0; c < detection.size(); ++c) {
      b.detection_overlaps(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c)) =
          inner_product(detection[a].mode, detection[c].mode);
    }
  }

  const StateSummary summary{b.mean_photons, b.number_information};
  b.oracle = family.oracle(summary);
  if (b.oracle) {
    b.closed_form = family.oracle({b.mean_photons, 4.0 * b.number_information});
    if (family.name() == "gaussian-beam-carrier") {
      const auto g = geometry_values(config);
      const BeamGeometry geometry{g.at("w0"), g.at("k")};
      b.printed_carrier_entry = printed_carrier_axial_entry(geometry, summary);
      b.closed_form = beam_closed_form(geometry, summary);
      (*b.closed_form)(2, 2) = *b.printed_carrier_entry;
    }
  }

  b.warnings = gens.warnings;
  if (std::holds_alternative<CustomSpec>(spec) && state.boundary_population() >= tol::cutoff) {
    b.warnings.push_back("custom state populates the Fock cutoff boundary with probability " +
                         format_double(state.boundary_population()));
  }
  const MatrixChecks checks = check_qfim(f);
  if (!checks.positive_semidefinite) {
    b.warnings.push_back("QFIM has a negative eigenvalue " + format_double(checks.min_eigenvalue));
  }
  b.provenance = provenance(config, family, state);
  return b;
}

ReportBundle run_qfim(const RunConfig& config) {
  ReportBundle b = compute_report(config);
  write_atomic(config.out / "report.json", to_json(b).dump(2) + "\n");
  write_atomic(config.out / "qfim.csv", matrix_csv(b.report.qfim, b.report.labels));
  write_atomic(config.out / "qfim_inverse.csv", matrix_csv(b.report.pseudo_inverse, b.report.labels));
  return b;
}

std::vector<AttainabilityRow> run_attainability(const RunConfig& config) {
  const ReportBundle b = compute_report(config);
  std::string csv = "param_a,param_b,Im_overlap,normalized_Im_overlap,commutator_expectation,attainable_flag\n";
  for (const auto& row : b.attainability) {
    csv += row.param_a + "," + row.param_b + "," + format_double(row.im_overlap) + "," +
           format_double(row.normalized_im_overlap) + "," + format_double(row.commutator) + "," +
           (row.attainable ? "true" : "false") + "\n";
  }
  write_atomic(config.out / "attainability.csv", csv);
  return b.attainability;
}

namespace {

std::string mode_csv(const Mode& m, bool with_samples) {
  const auto& grid = *m.grid();
  std::string out = grid.dimensionality() == 2 ? "x,y,re,im\n" : "x,re,im\n";
  if (!with_samples) return out;
  for (std::size_t j = 0; j < m.size(); ++j) {
    out += format_double(grid.coordinate(j, 0));
    if (grid.dimensionality() == 2) out += "," + format_double(grid.coordinate(j, 1));
    out += "," + format_double(m[j].real()) + "," + format_double(m[j].imag()) + "\n";
  }
  return out;
}

}  // namespace

json export_detection_modes(const RunConfig& config) { return export_detection_modes(config, family_for(config)); }

json export_detection_modes(const RunConfig& config, const ParameterFamily& family) {
  if (family.mode_count() != 1) throw EngineFailure("export_detection_modes", "only single-mode families are supported");
  const GeneratorCoefficients gens =
      staged("build_generators", [&] { return build_generators(family, family.basis(), generator_options(config)); });
  const std::size_t n = gens.parameter_count();

  std::vector<DetectionMode> modes;
  json parameters = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    modes.push_back(detection_mode(gens.derivatives[a][0], gens.labels[a]));
    const std::string file = "modes_" + gens.labels[a] + ".csv";
    write_atomic(config.out / file, mode_csv(modes[a].mode, !modes[a].degenerate));
    parameters.push_back(
        {{"label", gens.labels[a]}, {"weight", modes[a].weight}, {"degenerate", modes[a].degenerate}, {"file", file}});
  }

  json overlaps = json::array();
  json gs_norms = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    json orow = json::array();
    json grow = json::array();
    for (std::size_t c = 0; c < n; ++c) {
      const complex d = inner_product(modes[a].mode, modes[c].mode);
      orow.push_back({{"re", d.real()}, {"im", d.imag()}});
      const bool defined = !modes[a].degenerate && !modes[c].degenerate;
      grow.push_back(defined ? json(std::sqrt(std::max(0.0, 1.0 - std::norm(d)))) : json(nullptr));
    }
    overlaps.push_back(std::move(orow));
    gs_norms.push_back(std::move(grow));
  }

  // Readout basis: f^a / w^a in parameter order, orthogonalized; inputs in the span of earlier
  // ones are reported as dependent.
  std::vector<Mode> accepted;
  json readout = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    json entry = {{"label", gens.labels[a]}};
    if (modes[a].degenerate) {
      entry["status"] = "degenerate";
      readout.push_back(std::move(entry));
      continue;
    }
    std::vector<Mode> trial = accepted;
    trial.push_back(gens.derivatives[a][0].scaled(1.0 / modes[a].weight));
    try {
      const GramSchmidtResult gs = gram_schmidt(trial);
      accepted = std::move(trial);
      const std::string file = "readout_" + gens.labels[a] + ".csv";
      write_atomic(config.out / file, mode_csv(gs.basis[gs.basis.size() - 1], true));
      entry["status"] = "independent";
      entry["file"] = file;
    } catch (const RankDeficiencyError&) {
      entry["status"] = "dependent";
    }
    readout.push_back(std::move(entry));
  }

  json sidecar = {{"family", family.name()},
                  {"convention", "detection mode = (i / w) f^a; readout inputs f^a / w^a"},
                  {"parameters", std::move(parameters)},
                  {"overlaps", std::move(overlaps)},
                  {"gram_schmidt_norms", std::move(gs_norms)},
                  {"readout_basis", std::move(readout)}};
  write_atomic(config.out / "detection_modes.json", sidecar.dump(2) + "\n");
  return sidecar;
}

std::string list_families() {
  std::ostringstream out;
  for (const auto& d : family_registry()) {
    out << d.name << ": " << d.description << "\n  geometry:";
    for (const auto& g : d.geometry) out << " " << g.name << "=" << format_double(g.default_value) << " [" << g.unit << "]";
    out << "\n  parameters:";
    for (const auto& p : d.parameters) out << " " << p;
    out << "\n";
  }
  return out.str();
}

}  // namespace mqcrb::app

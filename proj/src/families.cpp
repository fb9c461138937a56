#include "mqcrb/families.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mqcrb/errors.hpp"
#include "mqcrb/tolerances.hpp"

namespace mqcrb {

namespace {

constexpr complex I{0.0, 1.0};

enum BeamParameter { X0, Y0, Z0, W0, ALPHA_X, ALPHA_Y };

GridPtr transverse_grid(double waist, const TransverseGrid& grid) {
  const double half = grid.half_width * waist;
  return SampleGrid::uniform(-half, half, grid.points, -half, half, grid.points);
}

void check_normalized(const Mode& f, const std::string& family) {
  const double error = std::abs(f.norm() * f.norm() - 1.0);
  if (error > 10.0 * tol::quad) {
    std::ostringstream msg;
    msg << family << ": reference mode norm is off by " << error << "; refine or widen the grid";
    throw ResolutionError(msg.str());
  }
}

// Mode samples from a pointwise function of the sample index.
template <class F>
Mode sample(const GridPtr& grid, F&& value) {
  std::vector<complex> s(grid->size());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = value(j);
  return Mode(grid, std::move(s));
}

// HG00 observed in the plane z = 0 for a beam with waist w0 + dw centred at (x0, y0, z0), tilted
// by (alpha_x, alpha_y).
complex beam_sample(double x, double y, const BeamGeometry& g, bool carrier, std::span<const double> theta) {
  const double k = g.wave_number;
  const double waist = g.waist + theta[W0];
  if (!(waist > 0.0)) return {std::nan(""), 0.0};
  const double zr = k * waist * waist / 2.0;
  const double zeta = -theta[Z0];
  const double ratio = zeta / zr;
  const double w = waist * std::sqrt(1.0 + ratio * ratio);
  const double inv_r = zeta / (zeta * zeta + zr * zr);
  const double dx = x - theta[X0];
  const double dy = y - theta[Y0];
  const double r2 = dx * dx + dy * dy;
  double phase = -k * r2 * inv_r / 2.0 + std::atan(ratio) + k * (x * theta[ALPHA_X] + y * theta[ALPHA_Y]);
  if (carrier) phase += k * theta[Z0];
  const double amplitude = std::sqrt(2.0 / std::numbers::pi) / w * std::exp(-r2 / (w * w));
  return std::polar(amplitude, phase);
}

}  // namespace

ParameterFamily gaussian_beam_family(const BeamGeometry& geometry, bool carrier_phase, const TransverseGrid& grid) {
  if (!(geometry.waist > 0.0) || !(geometry.wave_number > 0.0) || !std::isfinite(geometry.waist) ||
      !std::isfinite(geometry.wave_number)) {
    throw std::invalid_argument("beam geometry needs positive finite w0 and k");
  }
  const std::string name = carrier_phase ? "gaussian-beam-carrier" : "gaussian-beam";
  const GridPtr g = transverse_grid(geometry.waist, grid);
  const double w0 = geometry.waist;
  const double k = geometry.wave_number;
  const double zr = geometry.rayleigh_range();

  const std::vector<double> zero(6, 0.0);
  const Mode f = sample(g, [&](std::size_t j) { return beam_sample(g->coordinate(j, 0), g->coordinate(j, 1), geometry, carrier_phase, zero); });
  check_normalized(f, name);

  std::vector<ParameterSpec> params = {
      {"x0", "length", w0},
      {"y0", "length", w0},
      {"z0", "length", carrier_phase ? std::min(zr, 1.0 / k) : zr},
      {"w0", "length", w0},
      {"alpha_x", "rad", 1.0 / (k * w0)},
      {"alpha_y", "rad", 1.0 / (k * w0)},
  };

  auto evaluate = [g, geometry, carrier_phase](std::size_t, std::span<const double> theta) {
    return sample(g, [&](std::size_t j) {
      return beam_sample(g->coordinate(j, 0), g->coordinate(j, 1), geometry, carrier_phase, theta);
    });
  };

  auto derivative = [g, f, w0, k, zr, carrier_phase](std::size_t, std::size_t parameter) -> std::optional<Mode> {
    return sample(g, [&](std::size_t j) -> complex {
      const double x = g->coordinate(j, 0);
      const double y = g->coordinate(j, 1);
      const double r2 = x * x + y * y;
      const complex fj = f[j];
      switch (parameter) {
        case X0: return 2.0 * x / (w0 * w0) * fj;
        case Y0: return 2.0 * y / (w0 * w0) * fj;
        case Z0: {
          complex d = I / zr * (r2 / (w0 * w0) - 1.0);
          if (carrier_phase) d += I * k;
          return d * fj;
        }
        case W0: return (-1.0 / w0 + 2.0 * r2 / (w0 * w0 * w0)) * fj;
        case ALPHA_X: return I * k * x * fj;
        default: return I * k * y * fj;
      }
    });
  };

  auto oracle = [geometry, carrier_phase](const StateSummary& s) {
    Eigen::MatrixXd out = beam_closed_form(geometry, {s.mean_photons, s.number_information / 4.0});
    if (carrier_phase) {
      const double zr = geometry.rayleigh_range();
      const double kw = geometry.wave_number * geometry.waist;
      const double alpha = 1.0 - kw * kw;
      out(Z0, Z0) = alpha * alpha * s.number_information / (4.0 * zr * zr) + s.mean_photons / (zr * zr);
    }
    return out;
  };

  return ParameterFamily(name, g, 1, std::move(params), std::move(evaluate), std::move(derivative), std::move(oracle));
}

ParameterFamily gaussian_pulse_family(const PulseSpectrum& spectrum, const SpectralGrid& grid) {
  if (!(spectrum.center > 0.0) || !(spectrum.variance > 0.0) || !std::isfinite(spectrum.center) ||
      !std::isfinite(spectrum.variance)) {
    throw std::invalid_argument("pulse spectrum needs positive finite omega0 and delta2_omega");
  }
  const double w0 = spectrum.center;
  const double var = spectrum.variance;
  const double sigma = std::sqrt(var);
  const GridPtr g = SampleGrid::uniform(w0 - grid.half_width * sigma, w0 + grid.half_width * sigma, grid.points);
  const double norm = std::pow(2.0 * std::numbers::pi * var, -0.25);

  auto envelope = [=](double omega, std::span<const double> theta) {
    const double s = omega - w0;
    const double phase = w0 * theta[0] + s * theta[1] + s * s / w0 * theta[2];
    return std::polar(norm * std::exp(-s * s / (4.0 * var)), phase);
  };
  const std::vector<double> zero(3, 0.0);
  const Mode u = sample(g, [&](std::size_t j) { return envelope(g->coordinate(j, 0), zero); });
  check_normalized(u, "gaussian-pulse");

  std::vector<ParameterSpec> params = {
      {"t_phi", "time", 1.0 / w0},
      {"t_g", "time", 1.0 / sigma},
      {"t_GVD", "time", w0 / var},
  };
  auto evaluate = [g, envelope](std::size_t, std::span<const double> theta) {
    return sample(g, [&](std::size_t j) { return envelope(g->coordinate(j, 0), theta); });
  };
  auto derivative = [g, u, w0](std::size_t, std::size_t parameter) -> std::optional<Mode> {
    return sample(g, [&](std::size_t j) {
      const double s = g->coordinate(j, 0) - w0;
      const double factor = parameter == 0 ? w0 : parameter == 1 ? s : s * s / w0;
      return I * factor * u[j];
    });
  };
  auto oracle = [spectrum](const StateSummary& s) {
    return pulse_closed_form(spectrum, {s.mean_photons, s.number_information / 4.0});
  };
  return ParameterFamily("gaussian-pulse", g, 1, std::move(params), std::move(evaluate), std::move(derivative),
                         std::move(oracle));
}

ParameterFamily displaced_beam_family(double waist, const TransverseGrid& grid) {
  if (!(waist > 0.0) || !std::isfinite(waist)) throw std::invalid_argument("displaced beam needs a positive finite w0");
  const GridPtr g = transverse_grid(waist, grid);
  auto profile = [=](double x, double y) {
    return std::sqrt(2.0 / std::numbers::pi) / waist * std::exp(-(x * x + y * y) / (waist * waist));
  };
  const Mode f = sample(g, [&](std::size_t j) { return complex(profile(g->coordinate(j, 0), g->coordinate(j, 1))); });
  check_normalized(f, "displaced-beam");

  std::vector<ParameterSpec> params = {{"x0", "length", waist}, {"y0", "length", waist}};
  auto evaluate = [g, profile](std::size_t, std::span<const double> theta) {
    return sample(g, [&](std::size_t j) {
      return complex(profile(g->coordinate(j, 0) - theta[0], g->coordinate(j, 1) - theta[1]));
    });
  };
  auto derivative = [g, f, waist](std::size_t, std::size_t parameter) -> std::optional<Mode> {
    return sample(g, [&](std::size_t j) { return 2.0 * g->coordinate(j, parameter) / (waist * waist) * f[j]; });
  };
  auto oracle = [waist](const StateSummary& s) {
    return Eigen::MatrixXd(Eigen::Matrix2d::Identity() * 4.0 * s.mean_photons / (waist * waist));
  };
  return ParameterFamily("displaced-beam", g, 1, std::move(params), std::move(evaluate), std::move(derivative),
                         std::move(oracle));
}

double printed_carrier_axial_entry(const BeamGeometry& geometry, const StateSummary& summary) {
  const double zr = geometry.rayleigh_range();
  const double kw = geometry.wave_number * geometry.waist;
  const double alpha = 1.0 - kw * kw;
  return (2.0 * alpha * alpha - 1.0) / (zr * zr) * (summary.number_information + summary.mean_photons);
}

Eigen::MatrixXd beam_closed_form(const BeamGeometry& geometry, const StateSummary& summary) {
  const double n = summary.mean_photons;
  const double w0 = geometry.waist;
  const double k = geometry.wave_number;
  const double zr = geometry.rayleigh_range();
  Eigen::VectorXd d(6);
  d << 4.0 * n / (w0 * w0), 4.0 * n / (w0 * w0), (n + summary.number_information) / (zr * zr), 4.0 * n / (w0 * w0),
      k * k * w0 * w0 * n, k * k * w0 * w0 * n;
  return d.asDiagonal();
}

Eigen::MatrixXd pulse_closed_form(const PulseSpectrum& spectrum, const StateSummary& summary) {
  const double n = summary.mean_photons;
  const double f = summary.number_information;
  const double w0 = spectrum.center;
  const double var = spectrum.variance;
  Eigen::Matrix3d m;
  m << w0 * w0 * f, 0.0, var * f,
       0.0, var * n, 0.0,
       var * f, 0.0, var * var / (w0 * w0) * (f + 2.0 * n);
  return 4.0 * m;
}

const std::vector<FamilyDescriptor>& family_registry() {
  static const std::vector<FamilyDescriptor> registry = {
      {"gaussian-beam",
       "HG00 beam at its waist plane",
       {{"w0", "length", 1.0}, {"k", "1/length", 10.0}},
       {"x0", "y0", "z0", "w0", "alpha_x", "alpha_y"}},
      {"gaussian-beam-carrier",
       "HG00 beam including the axial carrier phase",
       {{"w0", "length", 1.0}, {"k", "1/length", 10.0}},
       {"x0", "y0", "z0", "w0", "alpha_x", "alpha_y"}},
      {"gaussian-pulse",
       "Gaussian spectral mode with dispersive phase",
       {{"omega0", "rad/time", 10.0}, {"delta2_omega", "rad^2/time^2", 1.0}},
       {"t_phi", "t_g", "t_GVD"}},
      {"displaced-beam", "HG00 beam with transverse displacement only", {{"w0", "length", 1.0}}, {"x0", "y0"}},
  };
  return registry;
}

const FamilyDescriptor* find_family(const std::string& name) {
  for (const auto& d : family_registry()) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

ParameterFamily make_family(const std::string& name, const std::map<std::string, double>& geometry,
                            const FamilyOverrides& overrides) {
  const FamilyDescriptor* d = find_family(name);
  if (!d) {
    std::string known;
    for (const auto& f : family_registry()) known += (known.empty() ? "" : ", ") + f.name;
    throw std::invalid_argument("unknown family '" + name + "'; available: " + known);
  }
  std::map<std::string, double> values;
  for (const auto& field : d->geometry) values[field.name] = field.default_value;
  for (const auto& [key, value] : geometry) {
    if (!values.contains(key)) throw std::invalid_argument("family '" + name + "' has no geometry field '" + key + "'");
    if (!std::isfinite(value) || !(value > 0.0)) {
      throw std::invalid_argument("geometry field '" + key + "' must be positive and finite");
    }
    values[key] = value;
  }
  if (overrides.grid_points && *overrides.grid_points < 2) throw std::invalid_argument("grid_points must be at least 2");

  if (name == "gaussian-pulse") {
    SpectralGrid grid;
    if (overrides.grid_points) grid.points = *overrides.grid_points;
    return gaussian_pulse_family({values["omega0"], values["delta2_omega"]}, grid);
  }
  TransverseGrid grid;
  if (overrides.grid_points) grid.points = *overrides.grid_points;
  if (name == "displaced-beam") return displaced_beam_family(values["w0"], grid);
  return gaussian_beam_family({values["w0"], values["k"]}, name == "gaussian-beam-carrier", grid);
}

}  // namespace mqcrb

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mqcrb/parameter_family.hpp"

namespace mqcrb {

struct BeamGeometry {
  double waist = 1.0;        // w0
  double wave_number = 10.0;  // k
  double rayleigh_range() const { return wave_number * waist * waist / 2.0; }
};

struct PulseSpectrum {
  double center = 10.0;    // omega_0
  double variance = 1.0;   // Delta^2 omega
};

struct TransverseGrid {
  std::size_t points = 256;  // per axis
  double half_width = 4.0;   // in waists
};

struct SpectralGrid {
  std::size_t points = 2048;
  double half_width = 8.0;  // in spectral standard deviations
};

// HG00 at its waist plane with parameters (x0, y0, z0, w0, alpha_x, alpha_y).
// With carrier_phase the axial derivative includes the e^{-ikz} carrier.
ParameterFamily gaussian_beam_family(const BeamGeometry& geometry, bool carrier_phase = false,
                                     const TransverseGrid& grid = {});

// Gaussian spectral mode with parameters (t_phi, t_g, t_GVD).
ParameterFamily gaussian_pulse_family(const PulseSpectrum& spectrum, const SpectralGrid& grid = {});

// HG00 with transverse displacements (x0, y0) only.
ParameterFamily displaced_beam_family(double waist, const TransverseGrid& grid = {});

// The closed-form axial entry with carrier exactly as printed, ((2a^2 - 1)/z_R^2)(F_Q^I + N),
// a = 1 - (k w0)^2. Reported for comparison only; it does not follow from the mode derivatives.
double printed_carrier_axial_entry(const BeamGeometry& geometry, const StateSummary& summary);

// Printed closed forms (scalar term with the factor-4 convention) for the built-in families.
Eigen::MatrixXd beam_closed_form(const BeamGeometry& geometry, const StateSummary& summary);
Eigen::MatrixXd pulse_closed_form(const PulseSpectrum& spectrum, const StateSummary& summary);

// Registry used by the CLI.
struct GeometryField {
  std::string name;
  std::string unit;
  double default_value;
};
struct FamilyDescriptor {
  std::string name;
  std::string description;
  std::vector<GeometryField> geometry;
  std::vector<std::string> parameters;
};

const std::vector<FamilyDescriptor>& family_registry();
const FamilyDescriptor* find_family(const std::string& name);

struct FamilyOverrides {
  std::optional<std::size_t> grid_points;
};

// Throws std::invalid_argument on unknown names or invalid geometry.
ParameterFamily make_family(const std::string& name, const std::map<std::string, double>& geometry,
                            const FamilyOverrides& overrides = {});

}  // namespace mqcrb

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mqcrb/fock.hpp"
#include "mqcrb/generators.hpp"
#include "mqcrb/mode_basis.hpp"
#include "mqcrb/parameter_family.hpp"

namespace mqcrb {

// QFIM of the unitary family exp(-i theta_a H_a) for the populated-mode generators:
// F_ab = 2 Tr(rho {H_a, H_b}) - sum_ab 8 p_a p_b / (p_a + p_b) Re(<a|H_a|b><b|H_b|a>).
Eigen::MatrixXd qfim_unitary(const DensityState& state, std::span<const Eigen::MatrixXcd> generators);
Eigen::MatrixXd qfim_unitary(const DensityState& state, const GeneratorCoefficients& generators);

// F_Q^I of the number operator (single mode): the same expression with H_a = H_b = N.
double number_information(const DensityState& state);

// Populated-mode QFIM plus the information leaking into vacuum modes:
// F = F^I + 4 Re sum_{jl} (f^a_j|Pi_vac|f^b_l) <a_j^dag a_l>.
Eigen::MatrixXd qfim_mode_split(const DensityState& state, const GeneratorCoefficients& generators);
Eigen::MatrixXd qfim_mode_split(const DensityState& state, const ParameterFamily& family, const ModeBasis& basis,
                                const GeneratorOptions& options = {});

// Which prefactor the scalar term of the single-mode formula carries. `reduction` is the exact
// reduction of the general formula, (f^a|f)(f|f^b) F_Q^I; `printed` multiplies that term by 4,
// which is the form the closed-form beam and pulse matrices follow.
enum class SingleModeConvention { reduction, printed };

// Single populated mode:
// F_ab = c Re[(f^a|f)(f|f^b)] F_Q^I + 4 Re[(f^a|f^b) - (f^a|f)(f|f^b)] N, c = 1 or 4.
Eigen::MatrixXd qfim_single_mode(const DensityState& state, const ParameterFamily& family,
                                 const GeneratorOptions& options = {},
                                 SingleModeConvention convention = SingleModeConvention::reduction);

struct MeanFieldChecks {
  // Mean-field mode f_0 and the derivative modes f_0^a, to verify (f_0|f_0^a) = 0.
  const Mode* mean_mode = nullptr;
  std::span<const Mode> derivatives;
  // Photons outside the coherent mean field; a warning is raised above sqrt(N0).
  double residual_photons = 0.0;
};

struct MeanFieldResult {
  Eigen::MatrixXd qfim;
  std::vector<std::string> warnings;
};

// F_ab = 4 N0 w^a w^b Cov(q_a, q_b), with cov from quadrature_covariance over the same detection modes.
MeanFieldResult qfim_mean_field(double mean_photons, std::span<const DetectionMode> detection,
                                const Eigen::MatrixXd& covariance, const MeanFieldChecks& checks = {});

}  // namespace mqcrb

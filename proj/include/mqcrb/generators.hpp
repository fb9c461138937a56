#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mqcrb/mode_basis.hpp"
#include "mqcrb/parallel.hpp"
#include "mqcrb/parameter_family.hpp"

namespace mqcrb {

// Mode-parameter generators H_a = i sum_{jk} (f_j|f^a_k) a_j^dag a_k, reduced to what the
// QFIM and attainability formulas need. Indices j, k below run over the populated modes I.
struct GeneratorCoefficients {
  std::vector<std::string> labels;
  std::size_t populated_modes = 0;

  // G^a_{jk} = i (f_j|f^a_k), Hermitian after symmetrization.
  std::vector<Eigen::MatrixXcd> populated;
  // Pre-symmetrization max |G - G^dag| / 2 per parameter.
  std::vector<double> hermiticity_residual;

  // derivative_gram[a][b](j, l) = (f^a_j|f^b_l).
  std::vector<std::vector<Eigen::MatrixXcd>> derivative_gram;
  // vacuum_gram[a][b](j, l) = (f^a_j| Pi_vac |f^b_l).
  std::vector<std::vector<Eigen::MatrixXcd>> vacuum_gram;

  // derivatives[a][j] = f^a_j for populated j (unnormalized).
  std::vector<std::vector<Mode>> derivatives;

  std::vector<std::string> warnings;

  std::size_t parameter_count() const noexcept { return labels.size(); }
  // Sensitivity weight of parameter a: sqrt(sum_j (f^a_j|f^a_j)).
  double weight(std::size_t a) const;
};

struct GeneratorOptions {
  DerivativeMethod method = DerivativeMethod::analytic;
  double relative_step = 1e-4;
  EngineOptions engine;
};

// Family mode k corresponds to basis entry k; basis must be orthonormal.
GeneratorCoefficients build_generators(const ParameterFamily& family, const ModeBasis& basis,
                                       const GeneratorOptions& options = {});

// Assembles coefficients directly from derivative modes (derivatives[a][j] for populated j).
GeneratorCoefficients generators_from_derivatives(std::vector<std::string> labels,
                                                  std::vector<std::vector<Mode>> derivatives,
                                                  const ModeBasis& basis);

}  // namespace mqcrb

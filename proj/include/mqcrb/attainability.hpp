#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mqcrb/fock.hpp"
#include "mqcrb/generators.hpp"
#include "mqcrb/parameter_family.hpp"

namespace mqcrb {

// U_ab = Tr(rho [L_a, L_b]) / (4i). For pure states this is Im<[H_a, H_b]>.
struct Attainability {
  Eigen::MatrixXd commutator;   // U, antisymmetric
  double real_residual = 0.0;   // max |Re Tr(rho [L_a, L_b])| / 4, zero up to rounding
  Eigen::MatrixXd threshold;    // tol::attain * w^a w^b <N>
  bool attainable = true;
};

// Mixed-state SLD commutator expectation (full generators, vacuum modes included).
Attainability attainability(const DensityState& state, const GeneratorCoefficients& generators);

// Pure-state reduction: Im<[H_a, H_b]> = 2 Im sum_ij (f^a_i|f^b_j) <a_i^dag a_j>.
Eigen::MatrixXd commutator_expectation_pure(const Eigen::MatrixXcd& moments, const GeneratorCoefficients& generators);

struct SingleModeAttainability {
  Eigen::MatrixXd im_overlap;             // Im (f^a|f^b)
  Eigen::MatrixXd normalized_im_overlap;  // Im (f^a|f^b) / (w^a w^b), zero for degenerate pairs
  std::vector<double> weights;
  bool attainable = true;
};

SingleModeAttainability attainability_single_mode(const GeneratorCoefficients& generators);
SingleModeAttainability attainability_single_mode(const ParameterFamily& family, const GeneratorOptions& options = {});

}  // namespace mqcrb

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mqcrb {

struct ParameterBound {
  std::string label;
  double multiparameter = 0.0;    // (F^+)_aa / M, +inf when not estimable jointly
  double single_parameter = 0.0;  // 1 / (M F_aa), +inf when F_aa = 0
  double penalty_ratio = 1.0;     // (F^+)_aa F_aa
};

struct QfimReport {
  std::vector<std::string> labels;
  Eigen::MatrixXd qfim;
  Eigen::MatrixXd pseudo_inverse;
  int repetitions = 1;
  std::vector<ParameterBound> bounds;
  std::vector<std::string> degenerate;      // parameters without a finite joint bound
  std::vector<Eigen::VectorXd> null_space;  // unestimable parameter combinations
  Eigen::MatrixXd attainability;            // U
  bool attainable = true;
  std::vector<double> weights;              // w^a
};

// Cramer-Rao bounds from a symmetric PSD QFIM; pseudo-inverse through the eigen-decomposition.
QfimReport crb_bounds(const Eigen::MatrixXd& qfim, int repetitions = 1, std::vector<std::string> labels = {});

struct MatrixChecks {
  double asymmetry = 0.0;     // max |F - F^T| / |F|
  double min_eigenvalue = 0.0;
  double norm = 0.0;          // spectral norm
  bool symmetric = true;
  bool positive_semidefinite = true;
};
MatrixChecks check_qfim(const Eigen::MatrixXd& qfim);

}  // namespace mqcrb

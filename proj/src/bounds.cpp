#include "mqcrb/bounds.hpp"

#include <cmath>
#include <limits>

#include "mqcrb/errors.hpp"
#include "mqcrb/tolerances.hpp"

namespace mqcrb {

MatrixChecks check_qfim(const Eigen::MatrixXd& qfim) {
  MatrixChecks out;
  if (qfim.rows() != qfim.cols()) throw StructuralError("QFIM must be square");
  if (qfim.size() == 0) return out;
  const double scale = qfim.cwiseAbs().maxCoeff();
  out.asymmetry = scale > 0.0 ? (qfim - qfim.transpose()).cwiseAbs().maxCoeff() / scale : 0.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (qfim + qfim.transpose()), Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  out.norm = eig.eigenvalues().cwiseAbs().maxCoeff();
  out.symmetric = out.asymmetry <= tol::symmetry;
  out.positive_semidefinite = out.min_eigenvalue >= -tol::psd * out.norm;
  return out;
}

QfimReport crb_bounds(const Eigen::MatrixXd& qfim, int repetitions, std::vector<std::string> labels) {
  if (repetitions < 1) throw PreconditionError("repetitions must be at least 1");
  const auto n = qfim.rows();
  if (labels.empty()) {
    for (Eigen::Index a = 0; a < n; ++a) labels.push_back("p" + std::to_string(a));
  }
  if (static_cast<Eigen::Index>(labels.size()) != n) throw StructuralError("one label per QFIM row required");
  const MatrixChecks checks = check_qfim(qfim);
  if (!checks.symmetric) {
    throw StructuralError("QFIM is not symmetric (relative asymmetry " + std::to_string(checks.asymmetry) + ")");
  }

  QfimReport out;
  out.labels = std::move(labels);
  out.qfim = 0.5 * (qfim + qfim.transpose());
  out.repetitions = repetitions;
  out.pseudo_inverse = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd null_weight = Eigen::VectorXd::Zero(n);
  if (n > 0) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.qfim);
    const double floor = tol::pinv * checks.norm;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double lambda = eig.eigenvalues()(k);
      const Eigen::VectorXd v = eig.eigenvectors().col(k);
      if (lambda > floor && lambda > 0.0) {
        out.pseudo_inverse += v * v.transpose() / lambda;
      } else {
        out.null_space.push_back(v);
        null_weight += v.cwiseAbs2();
      }
    }
  }

  const double inf = std::numeric_limits<double>::infinity();
  const double m = repetitions;
  for (Eigen::Index a = 0; a < n; ++a) {
    ParameterBound b;
    b.label = out.labels[static_cast<std::size_t>(a)];
    const double faa = out.qfim(a, a);
    const bool unestimable = std::sqrt(null_weight(a)) > tol::null_component;
    b.single_parameter = faa > 0.0 ? 1.0 / (m * faa) : inf;
    if (unestimable) {
      b.multiparameter = inf;
      b.penalty_ratio = inf;
      out.degenerate.push_back(b.label);
    } else {
      b.multiparameter = out.pseudo_inverse(a, a) / m;
      b.penalty_ratio = out.pseudo_inverse(a, a) * faa;
    }
    out.bounds.push_back(std::move(b));
  }
  out.attainability = Eigen::MatrixXd::Zero(n, n);
  return out;
}

}  // namespace mqcrb

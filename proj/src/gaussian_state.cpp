#include "mqcrb/gaussian_state.hpp"

#include <cmath>

#include "mqcrb/errors.hpp"
#include "mqcrb/tolerances.hpp"

namespace mqcrb {

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  const auto n = mean_.size();
  if (n == 0 || n % 2 != 0 || covariance_.rows() != n || covariance_.cols() != n) {
    throw StructuralError("Gaussian state needs a 2R mean vector and a 2R x 2R covariance");
  }
  const double scale = std::max(1.0, covariance_.cwiseAbs().maxCoeff());
  if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw StructuralError("quadrature covariance is not symmetric");
  }
  covariance_ = 0.5 * (covariance_ + covariance_.transpose());
  if (uncertainty_margin() < -1e-10 * scale) throw StructuralError("quadrature covariance violates the uncertainty relation");
}

GaussianState GaussianState::vacuum(std::size_t modes) {
  const auto n = static_cast<Eigen::Index>(2 * modes);
  return GaussianState(Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Identity(n, n));
}

GaussianState GaussianState::coherent(std::span<const complex> amplitudes) {
  const auto r = static_cast<Eigen::Index>(amplitudes.size());
  Eigen::VectorXd mean(2 * r);
  for (Eigen::Index k = 0; k < r; ++k) {
    mean(k) = 2.0 * amplitudes[static_cast<std::size_t>(k)].real();
    mean(r + k) = 2.0 * amplitudes[static_cast<std::size_t>(k)].imag();
  }
  return GaussianState(std::move(mean), Eigen::MatrixXd::Identity(2 * r, 2 * r));
}

GaussianState GaussianState::squeezed(std::size_t modes, std::size_t mode, double r, double phase) {
  if (mode >= modes) throw StructuralError("squeezed mode index out of range");
  const auto n = static_cast<Eigen::Index>(modes);
  const auto k = static_cast<Eigen::Index>(mode);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  const double c = std::cosh(2.0 * r), s = std::sinh(2.0 * r);
  cov(k, k) = c - s * std::cos(phase);
  cov(n + k, n + k) = c + s * std::cos(phase);
  cov(k, n + k) = cov(n + k, k) = -s * std::sin(phase);
  return GaussianState(Eigen::VectorXd::Zero(2 * n), std::move(cov));
}

Eigen::MatrixXd symplectic_form(std::size_t modes) {
  const auto n = static_cast<Eigen::Index>(modes);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return omega;
}

double GaussianState::uncertainty_margin() const {
  const Eigen::MatrixXcd h = covariance_.cast<complex>() + complex(0.0, 1.0) * symplectic_form(modes()).cast<complex>();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

GaussianState gaussian_moments(const DensityState& state) {
  const auto& space = state.space();
  const auto m = static_cast<Eigen::Index>(space.modes());
  Eigen::VectorXcd a1 = Eigen::VectorXcd::Zero(m);      // <a_k>
  Eigen::MatrixXcd a2 = Eigen::MatrixXcd::Zero(m, m);   // <a_j a_k>
  for (std::size_t s = 0; s < state.rank(); ++s) {
    const double p = state.probabilities()[s];
    const Eigen::VectorXcd v = state.eigenvectors().col(static_cast<Eigen::Index>(s));
    std::vector<Eigen::VectorXcd> lowered;
    for (Eigen::Index k = 0; k < m; ++k) lowered.push_back(apply_annihilation(space, static_cast<std::size_t>(k), v));
    for (Eigen::Index k = 0; k < m; ++k) {
      a1(k) += p * v.dot(lowered[static_cast<std::size_t>(k)]);
      for (Eigen::Index j = 0; j < m; ++j) {
        a2(j, k) += p * v.dot(apply_annihilation(space, static_cast<std::size_t>(j), lowered[static_cast<std::size_t>(k)]));
      }
    }
  }
  const Eigen::MatrixXcd n = first_moments(state);  // <a_j^dag a_k>

  Eigen::VectorXd mean(2 * m);
  mean.head(m) = 2.0 * a1.real();
  mean.tail(m) = 2.0 * a1.imag();

  Eigen::MatrixXd second(2 * m, 2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      const double delta = j == k ? 1.0 : 0.0;
      second(j, k) = 2.0 * a2(j, k).real() + 2.0 * n(j, k).real() + delta;
      second(m + j, m + k) = -2.0 * a2(j, k).real() + 2.0 * n(j, k).real() + delta;
      second(j, m + k) = 2.0 * (a2(j, k).imag() + n(j, k).imag());
      second(m + k, j) = second(j, m + k);
    }
  }
  Eigen::MatrixXd cov = second - mean * mean.transpose();
  return GaussianState(std::move(mean), 0.5 * (cov + cov.transpose()));
}

Eigen::MatrixXd quadrature_covariance(const GaussianState& state, std::span<const DetectionMode> targets,
                                      const ModeBasis& reference) {
  if (state.modes() != reference.size()) throw StructuralError("Gaussian state and reference basis differ in size");
  const auto r = static_cast<Eigen::Index>(reference.size());
  const auto t = static_cast<Eigen::Index>(targets.size());

  Eigen::MatrixXcd coeff(r, t);        // (f_k | f~_a)
  Eigen::MatrixXcd target_gram(t, t);  // (f~_a | f~_b)
  for (Eigen::Index a = 0; a < t; ++a) {
    const auto& fa = targets[static_cast<std::size_t>(a)].mode;
    for (Eigen::Index k = 0; k < r; ++k) coeff(k, a) = inner_product(reference[static_cast<std::size_t>(k)], fa);
    for (Eigen::Index b = 0; b < t; ++b) target_gram(a, b) = inner_product(fa, targets[static_cast<std::size_t>(b)].mode);
  }

  // q_a = sum_k (Re c_ka q_k + Im c_ka p_k) + remainder quadrature in vacuum.
  Eigen::MatrixXd v(2 * r, t);
  v.topRows(r) = coeff.real();
  v.bottomRows(r) = coeff.imag();
  const Eigen::MatrixXd remainder = (target_gram - coeff.adjoint() * coeff).real();
  Eigen::MatrixXd cov = v.transpose() * state.covariance() * v + remainder;
  return 0.5 * (cov + cov.transpose());
}

}  // namespace mqcrb

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mqcrb/fock.hpp"
#include "mqcrb/mode_basis.hpp"

namespace mqcrb {

// Gaussian moments over an ordered list of R orthonormal modes. Quadrature vector is
// (q_1..q_R, p_1..p_R) with q = a + a^dag, p = -i(a - a^dag), [q, p] = 2i; vacuum covariance
// is the identity.
class GaussianState {
 public:
  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

  static GaussianState vacuum(std::size_t modes);
  static GaussianState coherent(std::span<const complex> amplitudes);
  // Vacuum everywhere except `mode`, squeezed with Var(q) = exp(-2r) at phase 0.
  static GaussianState squeezed(std::size_t modes, std::size_t mode, double r, double phase = 0.0);

  std::size_t modes() const noexcept { return static_cast<std::size_t>(mean_.size()) / 2; }
  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  const Eigen::MatrixXd& covariance() const noexcept { return covariance_; }

  // Smallest eigenvalue of sigma + i Omega.
  double uncertainty_margin() const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
};

Eigen::MatrixXd symplectic_form(std::size_t modes);

// Mean and symmetrized covariance of the quadratures of a Fock-space state.
GaussianState gaussian_moments(const DensityState& state);

// Cov(q_a, q_b) of the amplitude quadratures of the target modes. Each target is expanded on
// the reference basis (where `state` lives); any remainder outside the span is in vacuum.
Eigen::MatrixXd quadrature_covariance(const GaussianState& state, std::span<const DetectionMode> targets,
                                      const ModeBasis& reference);

}  // namespace mqcrb

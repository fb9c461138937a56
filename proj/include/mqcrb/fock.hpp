#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mqcrb/grid.hpp"

namespace mqcrb {

// Tensor-product Fock space over M modes, occupations 0..cutoff in each.
// Basis index is mixed-radix with mode 0 most significant.
class FockSpace {
 public:
  FockSpace(std::size_t modes, int cutoff);

  std::size_t modes() const noexcept { return modes_; }
  int cutoff() const noexcept { return cutoff_; }
  std::size_t dimension() const noexcept { return dimension_; }

  std::vector<int> occupations(std::size_t index) const;
  std::size_t index(std::span<const int> occupations) const;

  // Same modes, one more level per mode; images of bilinears a_j^dag a_k land here exactly.
  FockSpace extended(int extra = 1) const { return FockSpace(modes_, cutoff_ + extra); }
  // Coefficients of a vector of this space re-indexed into a larger-cutoff space.
  Eigen::VectorXcd embed(const Eigen::VectorXcd& v, const FockSpace& larger) const;

  bool operator==(const FockSpace& other) const = default;

 private:
  std::size_t modes_;
  int cutoff_;
  std::size_t dimension_;
};

// rho = sum_a p_a |a><a|, keeping only components with p_a >= tol::prob.
class DensityState {
 public:
  // Renormalizes p to unit sum. Throws StructuralError on negative weights, shape mismatch or
  // non-orthonormal eigenvectors.
  DensityState(FockSpace space, std::vector<double> probabilities, Eigen::MatrixXcd eigenvectors);

  static DensityState pure(FockSpace space, Eigen::VectorXcd amplitudes);
  // Eigen-decomposes a Hermitian, unit-trace density matrix.
  static DensityState from_density_matrix(FockSpace space, const Eigen::MatrixXcd& rho);

  const FockSpace& space() const noexcept { return space_; }
  std::size_t rank() const noexcept { return probabilities_.size(); }
  const std::vector<double>& probabilities() const noexcept { return probabilities_; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return eigenvectors_; }
  bool is_pure() const noexcept { return rank() == 1; }

  Eigen::MatrixXcd density_matrix() const;

  // Population of basis states with some mode at the cutoff.
  double boundary_population() const;

 private:
  FockSpace space_;
  std::vector<double> probabilities_;
  Eigen::MatrixXcd eigenvectors_;
};

// Probe-state constructors. Product states over space.modes() modes; per-mode parameters
// are given as vectors (one entry per mode) so single-mode callers pass one value.
struct CoherentSpec {
  std::vector<complex> amplitudes;  // <a_k>
};
struct FockSpec {
  std::vector<int> occupations;
};
struct ThermalSpec {
  std::vector<double> mean_photons;
};
struct SqueezedVacuumSpec {
  std::vector<double> squeezing;  // r >= 0, Var(q) = exp(-2r) at phase 0
  std::vector<double> phases;     // optional, zeros when empty
};
struct CustomSpec {
  Eigen::MatrixXcd density_matrix;
};
using StateSpec = std::variant<CoherentSpec, FockSpec, ThermalSpec, SqueezedVacuumSpec, CustomSpec>;

// Smallest per-mode cutoff whose population at or above the cutoff is below tol::cutoff for the
// built-in kinds. Throws CutoffError past tol::max_fock_cutoff.
int default_cutoff(const StateSpec& spec);

// Builds the state on `modes` modes. `cutoff` overrides the default selection and must keep the
// truncation tail below tol::cutoff; otherwise CutoffError carries a suggested cutoff.
DensityState make_state(const StateSpec& spec, std::size_t modes = 1, std::optional<int> cutoff = std::nullopt);

// Truncation tail the built-in kinds would lose at a given cutoff (custom states report their
// boundary population).
double truncation_leakage(const StateSpec& spec, int cutoff);

// --- ladder-operator algebra on coefficient vectors -----------------------------------------

// a_j^dag a_k |v>, result in space.extended().
Eigen::VectorXcd apply_hopping(const FockSpace& space, std::size_t j, std::size_t k, const Eigen::VectorXcd& v);
// sum_{jk} G_jk a_j^dag a_k applied to each column; result in space.extended().
Eigen::MatrixXcd apply_bilinear(const FockSpace& space, const Eigen::MatrixXcd& G, const Eigen::MatrixXcd& columns);
// a_k |v>, result stays in space.
Eigen::VectorXcd apply_annihilation(const FockSpace& space, std::size_t k, const Eigen::VectorXcd& v);

// --- moments ---------------------------------------------------------------------------------

// M x M matrix with entry (j, l) = <a_j^dag a_l>.
Eigen::MatrixXcd first_moments(const DensityState& state);

// <a|H|b> for H = sum G_jk a_j^dag a_k over the retained eigenvectors.
Eigen::MatrixXcd operator_matrix_elements(const DensityState& state, const Eigen::MatrixXcd& G);

struct NumberMoments {
  double mean = 0.0;    // <N>
  double second = 0.0;  // Tr(rho N^2)
};
NumberMoments number_moments(const DensityState& state);

}  // namespace mqcrb

#pragma once

namespace mqcrb::tol {

inline constexpr double orth = 1e-10;      // Gram residual of an orthonormal basis
inline constexpr double rank = 1e-8;       // relative pivot floor in Gram-Schmidt
inline constexpr double zero_rel = 1e-12;  // degenerate derivative, times 1/grid span
inline constexpr double quad = 1e-6;       // quadrature convergence / normalization
inline constexpr double fd = 1e-6;         // analytic vs finite-difference derivative
inline constexpr double herm = 1e-8;       // generator Hermiticity residual
inline constexpr double prob = 1e-14;      // eigenvalue floor for the pairwise state sums
inline constexpr double cutoff = 1e-10;    // Fock truncation tail probability
inline constexpr double attain = 1e-10;    // commutator threshold, times w^a w^b <N>
inline constexpr double pinv = 1e-12;      // pseudo-inverse eigenvalue floor, times |F|
inline constexpr double psd = 1e-9;        // PSD check, times |F|
inline constexpr double trace = 1e-12;     // sum of eigenvalues of a density state
inline constexpr double eigvec = 1e-10;    // eigenvector orthonormality
inline constexpr double symmetry = 1e-10;   // relative asymmetry accepted by crb_bounds
inline constexpr double null_component = 1e-6;  // axis weight in the null space marking a parameter unestimable
inline constexpr double fd_relative_step = 1e-4;

inline constexpr int max_fock_cutoff = 64;

}  // namespace mqcrb::tol

#include "mqcrb/mode_basis.hpp"

#include <cmath>

#include "mqcrb/errors.hpp"
#include "mqcrb/tolerances.hpp"

namespace mqcrb {

ModeBasis::ModeBasis(std::vector<Mode> modes, std::vector<bool> populated)
    : modes_(std::move(modes)), populated_(std::move(populated)) {
  if (modes_.empty()) throw StructuralError("mode basis is empty");
  if (populated_.size() != modes_.size()) throw StructuralError("populated flags do not match mode count");
  for (const auto& m : modes_) require_same_grid(modes_.front(), m);
  const Eigen::MatrixXcd residual = gram_matrix(modes_) - Eigen::MatrixXcd::Identity(size(), size());
  const double worst = residual.cwiseAbs().maxCoeff();
  if (worst > tol::orth) {
    throw StructuralError("mode basis is not orthonormal (Gram residual " + std::to_string(worst) + ")");
  }
}

ModeBasis::ModeBasis(std::vector<Mode> modes) : ModeBasis(modes, std::vector<bool>(modes.size(), true)) {}

std::vector<std::size_t> ModeBasis::populated_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < populated_.size(); ++k) {
    if (populated_[k]) out.push_back(k);
  }
  return out;
}

Eigen::MatrixXcd gram_matrix(const std::vector<Mode>& modes) {
  const auto n = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = inner_product(modes[i], modes[i]);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      g(i, j) = inner_product(modes[i], modes[j]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

GramSchmidtResult gram_schmidt(const std::vector<Mode>& modes) {
  if (modes.empty()) throw StructuralError("gram_schmidt needs at least one mode");
  const auto n = static_cast<Eigen::Index>(modes.size());
  // inputs = outputs * R with R upper triangular.
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
  std::vector<Mode> out;
  out.reserve(modes.size());

  for (Eigen::Index k = 0; k < n; ++k) {
    Mode v = modes[k];
    const double input_norm = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < k; ++j) {
        const complex c = inner_product(out[j], v);
        r(j, k) += c;
        v = v.axpy(-c, out[j]);
      }
    }
    const double pivot = v.norm();
    if (!(input_norm > 0.0) || pivot < tol::rank * input_norm) {
      throw RankDeficiencyError(static_cast<std::size_t>(k), pivot);
    }
    r(k, k) = pivot;
    out.push_back(v.scaled(1.0 / pivot));
  }

  Eigen::MatrixXcd transform =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXcd::Identity(n, n));
  return {ModeBasis(std::move(out)), std::move(transform)};
}

DetectionMode detection_mode(const Mode& derivative, std::string label) {
  const double w = derivative.norm();
  const double tau_zero = tol::zero_rel / derivative.grid()->span();
  if (w < tau_zero) return {Mode::zero(derivative.grid()), 0.0, true, std::move(label)};
  return {derivative.scaled(complex(0.0, 1.0 / w)), w, false, std::move(label)};
}

complex vacuum_overlap(const Mode& fa, const Mode& fb, const ModeBasis& populated) {
  complex value = inner_product(fa, fb);
  for (std::size_t k : populated.populated_indices()) {
    value -= inner_product(fa, populated[k]) * inner_product(populated[k], fb);
  }
  return value;
}

}  // namespace mqcrb

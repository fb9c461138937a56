#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mqcrb/grid.hpp"

namespace mqcrb {

// Orthonormal modes on a shared grid. Entries flagged as populated form the set I;
// every other direction of the mode space is in vacuum.
class ModeBasis {
 public:
  ModeBasis(std::vector<Mode> modes, std::vector<bool> populated);
  // All modes populated.
  explicit ModeBasis(std::vector<Mode> modes);

  std::size_t size() const noexcept { return modes_.size(); }
  const Mode& operator[](std::size_t k) const { return modes_.at(k); }
  const std::vector<Mode>& modes() const noexcept { return modes_; }
  bool populated(std::size_t k) const { return populated_.at(k); }
  std::vector<std::size_t> populated_indices() const;
  const GridPtr& grid() const { return modes_.front().grid(); }

 private:
  std::vector<Mode> modes_;
  std::vector<bool> populated_;
};

Eigen::MatrixXcd gram_matrix(const std::vector<Mode>& modes);

struct GramSchmidtResult {
  ModeBasis basis;
  // Upper triangle T with output_k = sum_{j<=k} T(j,k) input_j.
  Eigen::MatrixXcd transform;
};

// Classical Gram-Schmidt with one reorthogonalization pass. Throws RankDeficiencyError
// naming the first input whose residual falls below tol::rank times its norm.
GramSchmidtResult gram_schmidt(const std::vector<Mode>& modes);

// Normalized, i-rotated derivative mode f~ = (i/w) f^a with sensitivity weight w = |f^a|.
struct DetectionMode {
  Mode mode;
  double weight = 0.0;
  bool degenerate = false;
  std::string label;
};

DetectionMode detection_mode(const Mode& derivative, std::string label = {});

// (fa| Pi_vac |fb), with Pi_vac projecting on the complement of the populated span.
complex vacuum_overlap(const Mode& fa, const Mode& fb, const ModeBasis& populated);

}  // namespace mqcrb

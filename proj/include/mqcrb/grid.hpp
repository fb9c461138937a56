#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace mqcrb {

using complex = std::complex<double>;

// Sample points and quadrature weights on which mode functions live.
// One- or two-dimensional; 2D grids are tensor products stored row-major (x fastest).
class SampleGrid {
 public:
  // Trapezoid weights on [lo, hi] with n points.
  static std::shared_ptr<const SampleGrid> uniform(double lo, double hi, std::size_t n);
  static std::shared_ptr<const SampleGrid> uniform(double xlo, double xhi, std::size_t nx, double ylo, double yhi,
                                                   std::size_t ny);
  // 1D grid with caller-supplied weights; used for finite mode spaces in tests and custom families.
  static std::shared_ptr<const SampleGrid> custom(std::vector<double> axis, std::vector<double> weights);

  std::size_t dimensionality() const noexcept { return axes_.size(); }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> axis(std::size_t d) const { return axes_.at(d); }
  std::span<const double> weights() const noexcept { return weights_; }

  // Coordinates of sample j along axis d.
  double coordinate(std::size_t j, std::size_t d) const;

  // Largest axis span; sets the scale of the degenerate-derivative threshold.
  double span() const noexcept;

  bool same_as(const SampleGrid& other) const noexcept;

 private:
  SampleGrid(std::vector<std::vector<double>> axes, std::vector<double> weights);

  std::vector<std::vector<double>> axes_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const SampleGrid>;

// Complex amplitude samples of a mode function on a grid.
class Mode {
 public:
  Mode(GridPtr grid, std::vector<complex> samples);
  static Mode zero(GridPtr grid);

  const GridPtr& grid() const noexcept { return grid_; }
  std::span<const complex> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const complex& operator[](std::size_t j) const { return samples_[j]; }

  double norm() const;

  Mode scaled(complex factor) const;
  // this + factor * other
  Mode axpy(complex factor, const Mode& other) const;

 private:
  GridPtr grid_;
  std::vector<complex> samples_;
};

// (a|b) = sum_j w_j conj(a_j) b_j
complex inner_product(const Mode& a, const Mode& b);

void require_same_grid(const Mode& a, const Mode& b);

}  // namespace mqcrb

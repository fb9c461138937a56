#include "mqcrb/grid.hpp"

#include <algorithm>
#include <cmath>

#include "mqcrb/errors.hpp"

namespace mqcrb {

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> axis(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j) axis[j] = lo + step * static_cast<double>(j);
  axis.back() = hi;
  return axis;
}

std::vector<double> trapezoid(const std::vector<double>& axis) {
  const std::size_t n = axis.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double h = axis[j + 1] - axis[j];
    w[j] += 0.5 * h;
    w[j + 1] += 0.5 * h;
  }
  return w;
}

void check_axis(const std::vector<double>& axis) {
  if (axis.size() < 2) throw StructuralError("grid axis needs at least two samples");
  for (std::size_t j = 0; j + 1 < axis.size(); ++j) {
    if (!(axis[j + 1] > axis[j])) throw StructuralError("grid axis must be strictly increasing");
  }
}

}  // namespace

SampleGrid::SampleGrid(std::vector<std::vector<double>> axes, std::vector<double> weights)
    : axes_(std::move(axes)), weights_(std::move(weights)) {
  std::size_t count = 1;
  for (const auto& axis : axes_) count *= axis.size();
  if (count != weights_.size()) throw StructuralError("weight count does not match sample count");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw StructuralError("quadrature weights must be positive and finite");
  }
}

std::shared_ptr<const SampleGrid> SampleGrid::uniform(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) throw StructuralError("uniform grid needs n >= 2 and hi > lo");
  auto axis = linspace(lo, hi, n);
  auto w = trapezoid(axis);
  return std::shared_ptr<const SampleGrid>(new SampleGrid({std::move(axis)}, std::move(w)));
}

std::shared_ptr<const SampleGrid> SampleGrid::uniform(double xlo, double xhi, std::size_t nx, double ylo,
                                                      double yhi, std::size_t ny) {
  if (nx < 2 || ny < 2 || !(xhi > xlo) || !(yhi > ylo)) {
    throw StructuralError("uniform grid needs n >= 2 and hi > lo on both axes");
  }
  auto x = linspace(xlo, xhi, nx);
  auto y = linspace(ylo, yhi, ny);
  const auto wx = trapezoid(x);
  const auto wy = trapezoid(y);
  std::vector<double> w(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) w[iy * nx + ix] = wx[ix] * wy[iy];
  }
  return std::shared_ptr<const SampleGrid>(new SampleGrid({std::move(x), std::move(y)}, std::move(w)));
}

std::shared_ptr<const SampleGrid> SampleGrid::custom(std::vector<double> axis, std::vector<double> weights) {
  check_axis(axis);
  return std::shared_ptr<const SampleGrid>(new SampleGrid({std::move(axis)}, std::move(weights)));
}

double SampleGrid::coordinate(std::size_t j, std::size_t d) const {
  if (d == 0) return axes_[0][j % axes_[0].size()];
  return axes_[1][j / axes_[0].size()];
}

double SampleGrid::span() const noexcept {
  double s = 0.0;
  for (const auto& axis : axes_) s = std::max(s, axis.back() - axis.front());
  return s;
}

bool SampleGrid::same_as(const SampleGrid& other) const noexcept {
  return this == &other || (axes_ == other.axes_ && weights_ == other.weights_);
}

Mode::Mode(GridPtr grid, std::vector<complex> samples) : grid_(std::move(grid)), samples_(std::move(samples)) {
  if (!grid_) throw StructuralError("mode without a grid");
  if (samples_.size() != grid_->size()) throw StructuralError("mode sample count does not match its grid");
  for (const auto& s : samples_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw EvaluationError("mode has non-finite samples");
  }
}

Mode Mode::zero(GridPtr grid) {
  const std::size_t n = grid->size();
  return Mode(std::move(grid), std::vector<complex>(n));
}

double Mode::norm() const { return std::sqrt(inner_product(*this, *this).real()); }

Mode Mode::scaled(complex factor) const {
  std::vector<complex> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(), [&](complex s) { return factor * s; });
  return Mode(grid_, std::move(out));
}

Mode Mode::axpy(complex factor, const Mode& other) const {
  require_same_grid(*this, other);
  std::vector<complex> out(samples_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = samples_[j] + factor * other.samples_[j];
  return Mode(grid_, std::move(out));
}

void require_same_grid(const Mode& a, const Mode& b) {
  if (!a.grid()->same_as(*b.grid())) throw StructuralError("modes live on different grids");
}

complex inner_product(const Mode& a, const Mode& b) {
  require_same_grid(a, b);
  const auto w = a.grid()->weights();
  const auto x = a.samples();
  const auto y = b.samples();
  // Written out in real arithmetic so that (a|b) and (b|a) are exact conjugates.
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double ar = x[j].real(), ai = x[j].imag();
    const double br = y[j].real(), bi = y[j].imag();
    re += w[j] * (ar * br + ai * bi);
    im += w[j] * (ar * bi - ai * br);
  }
  return {re, im};
}

}  // namespace mqcrb

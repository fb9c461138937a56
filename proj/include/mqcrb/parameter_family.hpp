#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mqcrb/grid.hpp"
#include "mqcrb/mode_basis.hpp"

namespace mqcrb {

struct ParameterSpec {
  std::string name;
  std::string unit;
  double scale = 1.0;  // characteristic magnitude; sets the finite-difference step
};

// Probe-state summary consumed by analytic QFIM oracles.
struct StateSummary {
  double mean_photons = 0.0;  // N = <N>
  double number_information = 0.0;  // F_Q^I of the number operator
};

// Parametrized mode set {f_k(theta)} around theta = 0.
class ParameterFamily {
 public:
  using Evaluator = std::function<Mode(std::size_t mode, std::span<const double> theta)>;
  using AnalyticDerivative = std::function<std::optional<Mode>(std::size_t mode, std::size_t parameter)>;
  using Oracle = std::function<Eigen::MatrixXd(const StateSummary&)>;

  ParameterFamily(std::string name, GridPtr grid, std::size_t mode_count, std::vector<ParameterSpec> parameters,
                  Evaluator evaluate, AnalyticDerivative derivative = {}, Oracle oracle = {});

  const std::string& name() const noexcept { return name_; }
  const GridPtr& grid() const noexcept { return grid_; }
  std::size_t mode_count() const noexcept { return mode_count_; }
  std::size_t parameter_count() const noexcept { return parameters_.size(); }
  const std::vector<ParameterSpec>& parameters() const noexcept { return parameters_; }
  std::vector<std::string> labels() const;

  Mode evaluate(std::size_t mode, std::span<const double> theta) const;
  Mode reference_mode(std::size_t mode) const;
  // Modes at theta = 0, all flagged populated.
  ModeBasis basis() const;

  std::optional<Mode> analytic_derivative(std::size_t mode, std::size_t parameter) const;
  bool has_oracle() const noexcept { return static_cast<bool>(oracle_); }
  std::optional<Eigen::MatrixXd> oracle(const StateSummary& summary) const;

 private:
  std::string name_;
  GridPtr grid_;
  std::size_t mode_count_;
  std::vector<ParameterSpec> parameters_;
  Evaluator evaluate_;
  AnalyticDerivative derivative_;
  Oracle oracle_;
};

enum class DerivativeMethod { analytic, finite_difference };

// Unnormalized derivative mode f^a_k = d f_k / d theta_a at theta = 0. The analytic path
// falls back to finite differences when the family has no closed form for that parameter.
// Finite differences: central difference with step h = relative_step * scale, refined by one
// Richardson level.
Mode derivative_mode(const ParameterFamily& family, std::size_t mode, std::size_t parameter,
                     DerivativeMethod method = DerivativeMethod::analytic,
                     double relative_step = 1e-4);

}  // namespace mqcrb

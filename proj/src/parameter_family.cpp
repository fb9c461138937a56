#include "mqcrb/parameter_family.hpp"

#include <cmath>

#include "mqcrb/errors.hpp"

namespace mqcrb {

ParameterFamily::ParameterFamily(std::string name, GridPtr grid, std::size_t mode_count,
                                 std::vector<ParameterSpec> parameters, Evaluator evaluate,
                                 AnalyticDerivative derivative, Oracle oracle)
    : name_(std::move(name)),
      grid_(std::move(grid)),
      mode_count_(mode_count),
      parameters_(std::move(parameters)),
      evaluate_(std::move(evaluate)),
      derivative_(std::move(derivative)),
      oracle_(std::move(oracle)) {
  if (!grid_ || mode_count_ == 0 || !evaluate_) throw StructuralError("family needs a grid, modes and an evaluator");
  for (const auto& p : parameters_) {
    if (!(p.scale > 0.0) || !std::isfinite(p.scale)) {
      throw StructuralError("parameter '" + p.name + "' needs a positive finite scale");
    }
  }
}

std::vector<std::string> ParameterFamily::labels() const {
  std::vector<std::string> out;
  for (const auto& p : parameters_) out.push_back(p.name);
  return out;
}

Mode ParameterFamily::evaluate(std::size_t mode, std::span<const double> theta) const {
  if (mode >= mode_count_) throw StructuralError("mode index out of range");
  if (theta.size() != parameters_.size()) throw StructuralError("parameter vector has the wrong length");
  return evaluate_(mode, theta);
}

Mode ParameterFamily::reference_mode(std::size_t mode) const {
  const std::vector<double> zero(parameters_.size(), 0.0);
  return evaluate(mode, zero);
}

ModeBasis ParameterFamily::basis() const {
  std::vector<Mode> modes;
  for (std::size_t k = 0; k < mode_count_; ++k) modes.push_back(reference_mode(k));
  return ModeBasis(std::move(modes));
}

std::optional<Mode> ParameterFamily::analytic_derivative(std::size_t mode, std::size_t parameter) const {
  if (!derivative_) return std::nullopt;
  return derivative_(mode, parameter);
}

std::optional<Eigen::MatrixXd> ParameterFamily::oracle(const StateSummary& summary) const {
  if (!oracle_) return std::nullopt;
  return oracle_(summary);
}

namespace {

Mode central_difference(const ParameterFamily& family, std::size_t mode, std::size_t parameter, double h) {
  std::vector<double> theta(family.parameter_count(), 0.0);
  theta[parameter] = h;
  const Mode plus = family.evaluate(mode, theta);
  theta[parameter] = -h;
  const Mode minus = family.evaluate(mode, theta);
  return plus.axpy(-1.0, minus).scaled(1.0 / (2.0 * h));
}

}  // namespace

Mode derivative_mode(const ParameterFamily& family, std::size_t mode, std::size_t parameter,
                     DerivativeMethod method, double relative_step) {
  if (parameter >= family.parameter_count()) throw StructuralError("parameter index out of range");
  if (method == DerivativeMethod::analytic) {
    if (auto d = family.analytic_derivative(mode, parameter)) return std::move(*d);
  }
  if (!(relative_step > 0.0)) throw StructuralError("finite-difference step must be positive");
  const double h = relative_step * family.parameters()[parameter].scale;
  try {
    const Mode coarse = central_difference(family, mode, parameter, h);
    const Mode fine = central_difference(family, mode, parameter, 0.5 * h);
    // Richardson: (4 D(h/2) - D(h)) / 3
    return fine.scaled(4.0 / 3.0).axpy(-1.0 / 3.0, coarse);
  } catch (const EvaluationError& e) {
    throw EvaluationError("finite-difference evaluation of '" + family.parameters()[parameter].name +
                          "' failed: " + e.what());
  }
}

}  // namespace mqcrb

#include "mqcrb/attainability.hpp"

#include <cmath>

#include "mqcrb/errors.hpp"
#include "mqcrb/tolerances.hpp"

namespace mqcrb {

namespace {

double zero_weight(const GeneratorCoefficients& g) {
  if (g.derivatives.empty() || g.derivatives.front().empty()) return 0.0;
  return tol::zero_rel / g.derivatives.front().front().grid()->span();
}

}  // namespace

Attainability attainability(const DensityState& state, const GeneratorCoefficients& generators) {
  if (state.space().modes() != generators.populated_modes) {
    throw StructuralError("state mode count does not match the populated modes");
  }
  const auto n = static_cast<Eigen::Index>(generators.parameter_count());
  const auto& p = state.probabilities();
  const auto r = static_cast<Eigen::Index>(p.size());
  const Eigen::MatrixXcd moments = first_moments(state);
  const double photons = moments.trace().real();

  std::vector<Eigen::MatrixXcd> elements(generators.parameter_count());
  for (std::size_t a = 0; a < elements.size(); ++a) elements[a] = operator_matrix_elements(state, generators.populated[a]);

  Attainability out;
  out.commutator = Eigen::MatrixXd::Zero(n, n);
  out.threshold = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const auto ua = static_cast<std::size_t>(a);
      const auto ub = static_cast<std::size_t>(b);
      const Eigen::MatrixXcd bracket = generators.derivative_gram[ua][ub] - generators.derivative_gram[ub][ua];
      complex trace = 4.0 * bracket.cwiseProduct(moments).sum();
      complex mixed = 0.0;
      for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) {
          const double pi = p[static_cast<std::size_t>(i)];
          const double pj = p[static_cast<std::size_t>(j)];
          if (pi + pj < tol::prob) continue;
          const double weight = pi * pi * pj / ((pi + pj) * (pi + pj));
          mixed += weight * (elements[ua](i, j) * elements[ub](j, i) - elements[ub](i, j) * elements[ua](j, i));
        }
      }
      trace -= 16.0 * mixed;
      out.commutator(a, b) = trace.imag() / 4.0;
      out.commutator(b, a) = -out.commutator(a, b);
      out.real_residual = std::max(out.real_residual, std::abs(trace.real()) / 4.0);
      const double threshold = tol::attain * generators.weight(ua) * generators.weight(ub) * photons;
      out.threshold(a, b) = out.threshold(b, a) = threshold;
      if (std::abs(out.commutator(a, b)) > threshold) out.attainable = false;
    }
  }
  return out;
}

Eigen::MatrixXd commutator_expectation_pure(const Eigen::MatrixXcd& moments, const GeneratorCoefficients& generators) {
  const auto n = static_cast<Eigen::Index>(generators.parameter_count());
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const auto& gram = generators.derivative_gram[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (gram.rows() != moments.rows() || gram.cols() != moments.cols()) {
        throw StructuralError("moment matrix does not match the populated modes");
      }
      u(a, b) = 2.0 * gram.cwiseProduct(moments).sum().imag();
      u(b, a) = -u(a, b);
    }
  }
  return u;
}

SingleModeAttainability attainability_single_mode(const GeneratorCoefficients& generators) {
  if (generators.populated_modes != 1) throw StructuralError("single-mode attainability needs exactly one populated mode");
  const auto n = static_cast<Eigen::Index>(generators.parameter_count());
  const double floor = zero_weight(generators);
  SingleModeAttainability out;
  out.im_overlap = Eigen::MatrixXd::Zero(n, n);
  out.normalized_im_overlap = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t a = 0; a < generators.parameter_count(); ++a) out.weights.push_back(generators.weight(a));
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const auto ua = static_cast<std::size_t>(a);
      const auto ub = static_cast<std::size_t>(b);
      const double im = generators.derivative_gram[ua][ub](0, 0).imag();
      out.im_overlap(a, b) = im;
      out.im_overlap(b, a) = -im;
      const double scale = out.weights[ua] * out.weights[ub];
      if (out.weights[ua] >= floor && out.weights[ub] >= floor && scale > 0.0) {
        out.normalized_im_overlap(a, b) = im / scale;
        out.normalized_im_overlap(b, a) = -im / scale;
      }
      if (std::abs(out.normalized_im_overlap(a, b)) > tol::attain) out.attainable = false;
    }
  }
  return out;
}

SingleModeAttainability attainability_single_mode(const ParameterFamily& family, const GeneratorOptions& options) {
  if (family.mode_count() != 1) throw StructuralError("single-mode attainability needs exactly one populated mode");
  return attainability_single_mode(build_generators(family, family.basis(), options));
}

}  // namespace mqcrb

#include "mqcrb/qfim.hpp"

#include <cmath>
#include <sstream>

#include "mqcrb/errors.hpp"
#include "mqcrb/tolerances.hpp"

namespace mqcrb {

namespace {

struct GeneratorAction {
  Eigen::MatrixXcd image;     // H|a> in the extended space, one column per eigenvector
  Eigen::MatrixXcd elements;  // <a|H|b>
};

Eigen::MatrixXcd embedded_eigenvectors(const DensityState& state) {
  const FockSpace ext = state.space().extended();
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(ext.dimension()), state.eigenvectors().cols());
  for (Eigen::Index a = 0; a < out.cols(); ++a) out.col(a) = state.space().embed(state.eigenvectors().col(a), ext);
  return out;
}

std::vector<GeneratorAction> generator_actions(const DensityState& state, std::span<const Eigen::MatrixXcd> generators,
                                               unsigned threads) {
  const auto m = static_cast<Eigen::Index>(state.space().modes());
  for (const auto& g : generators) {
    if (g.rows() != m || g.cols() != m) throw StructuralError("generator size does not match the state's mode count");
  }
  const Eigen::MatrixXcd embedded = embedded_eigenvectors(state);
  std::vector<GeneratorAction> out(generators.size());
  parallel_for(generators.size(), threads, [&](std::size_t a) {
    out[a].image = apply_bilinear(state.space(), generators[a], state.eigenvectors());
    out[a].elements = embedded.adjoint() * out[a].image;
  });
  return out;
}

double unitary_entry(const DensityState& state, const GeneratorAction& ha, const GeneratorAction& hb) {
  const auto& p = state.probabilities();
  const auto r = static_cast<Eigen::Index>(p.size());
  double first = 0.0;
  for (Eigen::Index a = 0; a < r; ++a) first += p[static_cast<std::size_t>(a)] * ha.image.col(a).dot(hb.image.col(a)).real();
  double second = 0.0;
  for (Eigen::Index a = 0; a < r; ++a) {
    for (Eigen::Index b = 0; b < r; ++b) {
      const double pa = p[static_cast<std::size_t>(a)];
      const double pb = p[static_cast<std::size_t>(b)];
      if (pa + pb < tol::prob) continue;
      second += 8.0 * pa * pb / (pa + pb) * (ha.elements(a, b) * hb.elements(b, a)).real();
    }
  }
  return 4.0 * first - second;
}

}  // namespace

Eigen::MatrixXd qfim_unitary(const DensityState& state, std::span<const Eigen::MatrixXcd> generators) {
  const auto actions = generator_actions(state, generators, 1);
  const auto n = static_cast<Eigen::Index>(generators.size());
  Eigen::MatrixXd f(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b) {
      f(a, b) = unitary_entry(state, actions[static_cast<std::size_t>(a)], actions[static_cast<std::size_t>(b)]);
      f(b, a) = f(a, b);
    }
  }
  return f;
}

Eigen::MatrixXd qfim_unitary(const DensityState& state, const GeneratorCoefficients& generators) {
  return qfim_unitary(state, std::span<const Eigen::MatrixXcd>(generators.populated));
}

double number_information(const DensityState& state) {
  const auto m = static_cast<Eigen::Index>(state.space().modes());
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(m, m);
  return qfim_unitary(state, std::span<const Eigen::MatrixXcd>(&identity, 1))(0, 0);
}

Eigen::MatrixXd qfim_mode_split(const DensityState& state, const GeneratorCoefficients& generators) {
  if (state.space().modes() != generators.populated_modes) {
    throw StructuralError("state has " + std::to_string(state.space().modes()) + " modes but the basis populates " +
                          std::to_string(generators.populated_modes));
  }
  Eigen::MatrixXd f = qfim_unitary(state, generators);
  const Eigen::MatrixXcd moments = first_moments(state);
  const auto n = static_cast<Eigen::Index>(generators.parameter_count());
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b) {
      const auto& v = generators.vacuum_gram[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      const double leak = 4.0 * v.cwiseProduct(moments).sum().real();
      f(a, b) += leak;
      if (b != a) f(b, a) = f(a, b);
    }
  }
  return f;
}

Eigen::MatrixXd qfim_mode_split(const DensityState& state, const ParameterFamily& family, const ModeBasis& basis,
                                const GeneratorOptions& options) {
  return qfim_mode_split(state, build_generators(family, basis, options));
}

Eigen::MatrixXd qfim_single_mode(const DensityState& state, const ParameterFamily& family,
                                 const GeneratorOptions& options, SingleModeConvention convention) {
  if (family.mode_count() != 1 || state.space().modes() != 1) {
    throw StructuralError("single-mode QFIM needs exactly one populated mode");
  }
  const GeneratorCoefficients gens = build_generators(family, family.basis(), options);
  const Mode f = family.reference_mode(0);
  const auto n = static_cast<Eigen::Index>(gens.parameter_count());
  std::vector<complex> overlap(static_cast<std::size_t>(n));  // (f|f^a)
  for (std::size_t a = 0; a < overlap.size(); ++a) overlap[a] = inner_product(f, gens.derivatives[a][0]);

  const double scalar = number_information(state);
  const double photons = number_moments(state).mean;
  const double c = convention == SingleModeConvention::printed ? 4.0 : 1.0;
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b) {
      const auto ua = static_cast<std::size_t>(a);
      const auto ub = static_cast<std::size_t>(b);
      const complex projected = std::conj(overlap[ua]) * overlap[ub];
      const complex full = gens.derivative_gram[ua][ub](0, 0);
      out(a, b) = c * projected.real() * scalar + 4.0 * (full - projected).real() * photons;
      out(b, a) = out(a, b);
    }
  }
  return out;
}

MeanFieldResult qfim_mean_field(double mean_photons, std::span<const DetectionMode> detection,
                                const Eigen::MatrixXd& covariance, const MeanFieldChecks& checks) {
  if (!(mean_photons > 0.0) || !std::isfinite(mean_photons)) {
    throw PreconditionError("mean-field QFIM needs a positive mean photon number");
  }
  const auto n = static_cast<Eigen::Index>(detection.size());
  if (covariance.rows() != n || covariance.cols() != n) {
    throw StructuralError("covariance does not match the detection modes");
  }
  MeanFieldResult out;
  if (checks.mean_mode) {
    if (checks.derivatives.size() != detection.size()) {
      throw StructuralError("mean-field check needs one derivative mode per detection mode");
    }
    for (std::size_t a = 0; a < detection.size(); ++a) {
      const double overlap = std::abs(inner_product(*checks.mean_mode, checks.derivatives[a]));
      if (overlap > tol::quad * std::max(detection[a].weight, 1e-300)) {
        std::ostringstream msg;
        msg << "mean-field orthogonality violated for '" << detection[a].label << "': |(f0|f0^a)| = " << overlap;
        throw PreconditionError(msg.str());
      }
    }
  }
  if (checks.residual_photons > std::sqrt(mean_photons)) {
    std::ostringstream msg;
    msg << "probe carries " << checks.residual_photons << " photons outside the mean field, above sqrt(N0) = "
        << std::sqrt(mean_photons) << "; the linearized generator is inaccurate";
    out.warnings.push_back(msg.str());
  }
  out.qfim.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b) {
      const double wa = detection[static_cast<std::size_t>(a)].weight;
      const double wb = detection[static_cast<std::size_t>(b)].weight;
      out.qfim(a, b) = 4.0 * mean_photons * wa * wb * 0.5 * (covariance(a, b) + covariance(b, a));
      out.qfim(b, a) = out.qfim(a, b);
    }
  }
  return out;
}

}  // namespace mqcrb

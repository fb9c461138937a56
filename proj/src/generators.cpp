#include "mqcrb/generators.hpp"

#include <cmath>
#include <sstream>

#include "mqcrb/errors.hpp"
#include "mqcrb/tolerances.hpp"

namespace mqcrb {

double GeneratorCoefficients::weight(std::size_t a) const {
  return std::sqrt(std::max(0.0, derivative_gram.at(a).at(a).trace().real()));
}

GeneratorCoefficients generators_from_derivatives(std::vector<std::string> labels,
                                                  std::vector<std::vector<Mode>> derivatives,
                                                  const ModeBasis& basis) {
  const auto populated = basis.populated_indices();
  if (populated.empty()) throw StructuralError("basis has no populated modes");
  if (labels.size() != derivatives.size()) throw StructuralError("one label per parameter required");
  const auto np = static_cast<Eigen::Index>(populated.size());
  const std::size_t count = labels.size();

  GeneratorCoefficients out;
  out.labels = std::move(labels);
  out.populated_modes = populated.size();
  out.populated.resize(count);
  out.hermiticity_residual.resize(count);
  out.derivative_gram.assign(count, std::vector<Eigen::MatrixXcd>(count));
  out.vacuum_gram.assign(count, std::vector<Eigen::MatrixXcd>(count));

  for (std::size_t a = 0; a < count; ++a) {
    if (derivatives[a].size() != populated.size()) {
      throw StructuralError("parameter '" + out.labels[a] + "' needs one derivative per populated mode");
    }
    Eigen::MatrixXcd g(np, np);
    for (Eigen::Index j = 0; j < np; ++j) {
      for (Eigen::Index k = 0; k < np; ++k) {
        g(j, k) = complex(0.0, 1.0) * inner_product(basis[populated[static_cast<std::size_t>(j)]],
                                                    derivatives[a][static_cast<std::size_t>(k)]);
      }
    }
    const double residual = 0.5 * (g - g.adjoint()).cwiseAbs().maxCoeff();
    out.hermiticity_residual[a] = residual;
    out.populated[a] = 0.5 * (g + g.adjoint());
  }

  // (f^a_j | P_I | f^b_l) from the raw, unsymmetrized projections.
  std::vector<Eigen::MatrixXcd> projections(count);  // (f_k | f^a_j), k over populated
  for (std::size_t a = 0; a < count; ++a) {
    projections[a].resize(np, np);
    for (Eigen::Index k = 0; k < np; ++k) {
      for (Eigen::Index j = 0; j < np; ++j) {
        projections[a](k, j) = inner_product(basis[populated[static_cast<std::size_t>(k)]], derivatives[a][static_cast<std::size_t>(j)]);
      }
    }
  }
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      Eigen::MatrixXcd p(np, np);
      for (Eigen::Index j = 0; j < np; ++j) {
        for (Eigen::Index l = 0; l < np; ++l) {
          p(j, l) = inner_product(derivatives[a][static_cast<std::size_t>(j)], derivatives[b][static_cast<std::size_t>(l)]);
        }
      }
      out.vacuum_gram[a][b] = p - projections[a].adjoint() * projections[b];
      out.derivative_gram[a][b] = std::move(p);
    }
  }

  for (std::size_t a = 0; a < count; ++a) {
    const double scale = std::max(out.populated[a].cwiseAbs().maxCoeff(), out.weight(a));
    if (out.hermiticity_residual[a] > tol::herm * std::max(scale, 1e-300)) {
      std::ostringstream msg;
      msg << "generator for '" << out.labels[a] << "' is not Hermitian (residual " << out.hermiticity_residual[a]
          << "): the family does not preserve mode normalization";
      out.warnings.push_back(msg.str());
    }
  }
  out.derivatives = std::move(derivatives);
  return out;
}

GeneratorCoefficients build_generators(const ParameterFamily& family, const ModeBasis& basis,
                                       const GeneratorOptions& options) {
  const auto populated = basis.populated_indices();
  for (std::size_t k : populated) {
    if (k >= family.mode_count()) throw StructuralError("populated basis mode has no counterpart in the family");
  }
  const std::size_t count = family.parameter_count();
  std::vector<std::vector<Mode>> derivatives(count);
  parallel_for(count, options.engine.threads, [&](std::size_t a) {
    std::vector<Mode> row;
    for (std::size_t k : populated) row.push_back(derivative_mode(family, k, a, options.method, options.relative_step));
    derivatives[a] = std::move(row);
  });
  return generators_from_derivatives(family.labels(), std::move(derivatives), basis);
}

}  // namespace mqcrb

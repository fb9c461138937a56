#include "mqcrb/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mqcrb/errors.hpp"
#include "mqcrb/tolerances.hpp"

namespace mqcrb {

// ---------------------------------------------------------------------------------------------
// FockSpace

FockSpace::FockSpace(std::size_t modes, int cutoff) : modes_(modes), cutoff_(cutoff), dimension_(1) {
  if (modes_ < 1) throw StructuralError("Fock space needs at least one mode");
  if (cutoff_ < 1) throw StructuralError("Fock cutoff must be at least 1");
  for (std::size_t m = 0; m < modes_; ++m) {
    dimension_ *= static_cast<std::size_t>(cutoff_ + 1);
    if (dimension_ > (std::size_t{1} << 26)) throw StructuralError("Fock space dimension too large");
  }
}

std::vector<int> FockSpace::occupations(std::size_t index) const {
  std::vector<int> occ(modes_);
  const auto base = static_cast<std::size_t>(cutoff_ + 1);
  for (std::size_t m = modes_; m-- > 0;) {
    occ[m] = static_cast<int>(index % base);
    index /= base;
  }
  return occ;
}

std::size_t FockSpace::index(std::span<const int> occupations) const {
  const auto base = static_cast<std::size_t>(cutoff_ + 1);
  std::size_t idx = 0;
  for (int n : occupations) idx = idx * base + static_cast<std::size_t>(n);
  return idx;
}

Eigen::VectorXcd FockSpace::embed(const Eigen::VectorXcd& v, const FockSpace& larger) const {
  if (larger.modes_ != modes_ || larger.cutoff_ < cutoff_) throw StructuralError("cannot embed into a smaller space");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(larger.dimension()));
  for (std::size_t i = 0; i < dimension_; ++i) {
    out(static_cast<Eigen::Index>(larger.index(occupations(i)))) = v(static_cast<Eigen::Index>(i));
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// DensityState

DensityState::DensityState(FockSpace space, std::vector<double> probabilities, Eigen::MatrixXcd eigenvectors)
    : space_(space) {
  if (static_cast<std::size_t>(eigenvectors.rows()) != space_.dimension() ||
      static_cast<std::size_t>(eigenvectors.cols()) != probabilities.size()) {
    throw StructuralError("eigenvector block does not match the Fock space or the eigenvalue count");
  }
  double total = 0.0;
  for (double p : probabilities) {
    if (!std::isfinite(p) || p < -tol::trace) throw StructuralError("state probabilities must be non-negative");
    total += std::max(p, 0.0);
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw StructuralError("state probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  std::vector<Eigen::Index> keep;
  for (std::size_t a = 0; a < probabilities.size(); ++a) {
    if (probabilities[a] >= tol::prob) keep.push_back(static_cast<Eigen::Index>(a));
  }
  eigenvectors_.resize(eigenvectors.rows(), static_cast<Eigen::Index>(keep.size()));
  double kept = 0.0;
  for (std::size_t c = 0; c < keep.size(); ++c) {
    eigenvectors_.col(static_cast<Eigen::Index>(c)) = eigenvectors.col(keep[c]);
    probabilities_.push_back(probabilities[static_cast<std::size_t>(keep[c])]);
    kept += probabilities_.back();
  }
  for (double& p : probabilities_) p /= kept;

  const auto r = static_cast<Eigen::Index>(probabilities_.size());
  const double orth = (eigenvectors_.adjoint() * eigenvectors_ - Eigen::MatrixXcd::Identity(r, r)).cwiseAbs().maxCoeff();
  if (orth > tol::eigvec) throw StructuralError("state eigenvectors are not orthonormal");
}

DensityState DensityState::pure(FockSpace space, Eigen::VectorXcd amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw StructuralError("pure state has zero norm");
  Eigen::MatrixXcd v = amplitudes / n;
  return DensityState(space, {1.0}, std::move(v));
}

DensityState DensityState::from_density_matrix(FockSpace space, const Eigen::MatrixXcd& rho) {
  if (static_cast<std::size_t>(rho.rows()) != space.dimension() || rho.rows() != rho.cols()) {
    throw StructuralError("density matrix does not match the Fock space dimension");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw StructuralError("density matrix is not Hermitian");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (rho + rho.adjoint()));
  std::vector<double> p(static_cast<std::size_t>(rho.rows()));
  for (Eigen::Index a = 0; a < rho.rows(); ++a) {
    const double v = eig.eigenvalues()(a);
    if (v < -1e-10) throw StructuralError("density matrix has a negative eigenvalue");
    p[static_cast<std::size_t>(a)] = std::max(v, 0.0);
  }
  return DensityState(space, std::move(p), eig.eigenvectors());
}

Eigen::MatrixXcd DensityState::density_matrix() const {
  Eigen::VectorXd p(static_cast<Eigen::Index>(rank()));
  for (std::size_t a = 0; a < rank(); ++a) p(static_cast<Eigen::Index>(a)) = probabilities_[a];
  return eigenvectors_ * p.asDiagonal() * eigenvectors_.adjoint();
}

double DensityState::boundary_population() const {
  double total = 0.0;
  for (std::size_t i = 0; i < space_.dimension(); ++i) {
    const auto occ = space_.occupations(i);
    if (std::find(occ.begin(), occ.end(), space_.cutoff()) == occ.end()) continue;
    for (std::size_t a = 0; a < rank(); ++a) {
      total += probabilities_[a] * std::norm(eigenvectors_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)));
    }
  }
  return total;
}

// ---------------------------------------------------------------------------------------------
// Constructors

namespace {

constexpr int kTailHorizon = 4096;

// Single-mode amplitude or probability distributions on 0..levels-1.
std::vector<complex> coherent_amplitudes(complex alpha, int levels) {
  std::vector<complex> c(static_cast<std::size_t>(levels));
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < levels; ++n) c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n - 1)] * alpha / std::sqrt(double(n));
  return c;
}

std::vector<complex> squeezed_amplitudes(double r, double phase, int levels) {
  std::vector<complex> c(static_cast<std::size_t>(levels));
  const complex ratio = -std::polar(std::tanh(r), phase);
  c[0] = 1.0 / std::sqrt(std::cosh(r));
  for (int n = 2; n < levels; n += 2) {
    c[static_cast<std::size_t>(n)] =
        c[static_cast<std::size_t>(n - 2)] * ratio * std::sqrt(double(n) * double(n - 1)) / double(n);
  }
  return c;
}

double poisson_tail(double mean, int cutoff) {
  if (mean == 0.0) return 0.0;
  // Sum the pmf from the far end to keep the small terms.
  const int top = std::max(cutoff, static_cast<int>(mean + 40.0 * std::sqrt(mean) + 50.0));
  double tail = 0.0;
  for (int n = top; n >= cutoff; --n) tail += std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
  return tail;
}

double thermal_tail(double nbar, int cutoff) {
  if (nbar == 0.0) return 0.0;
  return std::pow(nbar / (1.0 + nbar), cutoff);
}

double squeezed_tail(double r, int cutoff) {
  if (r == 0.0) return 0.0;
  const double t2 = std::tanh(r) * std::tanh(r);
  // P(2n) = t^{2n} (2n)! / (4^n n!^2) / cosh r
  double tail = 0.0;
  for (int n = kTailHorizon; 2 * n >= cutoff; --n) {
    const double logp = n * std::log(t2) + std::lgamma(2.0 * n + 1.0) - 2.0 * n * std::log(2.0) -
                        2.0 * std::lgamma(n + 1.0) - std::log(std::cosh(r));
    tail += std::exp(logp);
  }
  return tail;
}

void check_finite_nonneg(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument(std::string(what) + " must be finite and >= 0");
}

template <class T>
const T& per_mode(const std::vector<T>& values, std::size_t mode, std::size_t modes, const char* what) {
  if (values.size() != modes) {
    throw std::invalid_argument(std::string(what) + " needs one entry per mode (" + std::to_string(modes) + ")");
  }
  return values[mode];
}

Eigen::VectorXcd kron_all(const std::vector<std::vector<complex>>& factors) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Ones(1);
  for (const auto& f : factors) {
    Eigen::VectorXcd next(out.size() * static_cast<Eigen::Index>(f.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      for (std::size_t n = 0; n < f.size(); ++n) next(i * static_cast<Eigen::Index>(f.size()) + static_cast<Eigen::Index>(n)) = out(i) * f[n];
    }
    out = std::move(next);
  }
  return out;
}

std::size_t spec_modes(const StateSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, CoherentSpec>) return s.amplitudes.size();
        else if constexpr (std::is_same_v<S, FockSpec>) return s.occupations.size();
        else if constexpr (std::is_same_v<S, ThermalSpec>) return s.mean_photons.size();
        else if constexpr (std::is_same_v<S, SqueezedVacuumSpec>) return s.squeezing.size();
        else return 0;
      },
      spec);
}

void validate(const StateSpec& spec) {
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, CoherentSpec>) {
          for (const auto& a : s.amplitudes) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw std::invalid_argument("coherent amplitude must be finite");
          }
        } else if constexpr (std::is_same_v<S, FockSpec>) {
          for (int n : s.occupations) check_finite_nonneg(n, "Fock occupation");
        } else if constexpr (std::is_same_v<S, ThermalSpec>) {
          for (double nbar : s.mean_photons) check_finite_nonneg(nbar, "thermal mean photon number");
        } else if constexpr (std::is_same_v<S, SqueezedVacuumSpec>) {
          for (double r : s.squeezing) check_finite_nonneg(r, "squeezing");
          if (!s.phases.empty() && s.phases.size() != s.squeezing.size()) {
            throw std::invalid_argument("squeezing phases need one entry per mode");
          }
        }
      },
      spec);
}

}  // namespace

double truncation_leakage(const StateSpec& spec, int cutoff) {
  return std::visit(
      [cutoff](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        double tail = 0.0;
        if constexpr (std::is_same_v<S, CoherentSpec>) {
          for (const auto& a : s.amplitudes) tail += poisson_tail(std::norm(a), cutoff);
        } else if constexpr (std::is_same_v<S, FockSpec>) {
          for (int n : s.occupations) tail += n >= cutoff ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<S, ThermalSpec>) {
          for (double nbar : s.mean_photons) tail += thermal_tail(nbar, cutoff);
        } else if constexpr (std::is_same_v<S, SqueezedVacuumSpec>) {
          for (double r : s.squeezing) tail += squeezed_tail(r, cutoff);
        }
        return tail;
      },
      spec);
}

namespace {

int first_cutoff_below(const StateSpec& spec, int limit) {
  for (int c = 1; c <= limit; ++c) {
    if (truncation_leakage(spec, c) < tol::cutoff) return c;
  }
  return -1;
}

}  // namespace

int default_cutoff(const StateSpec& spec) {
  if (std::holds_alternative<CustomSpec>(spec)) throw std::invalid_argument("custom states carry their own cutoff");
  validate(spec);
  const int c = first_cutoff_below(spec, tol::max_fock_cutoff);
  if (c < 0) {
    const int suggested = first_cutoff_below(spec, kTailHorizon / 2);
    throw CutoffError("no Fock cutoff up to " + std::to_string(tol::max_fock_cutoff) +
                          " keeps the truncation tail below " + std::to_string(tol::cutoff) +
                          (suggested > 0 ? "; would need n_max = " + std::to_string(suggested) : std::string()),
                      suggested);
  }
  return c;
}

DensityState make_state(const StateSpec& spec, std::size_t modes, std::optional<int> cutoff) {
  if (const auto* custom = std::get_if<CustomSpec>(&spec)) {
    const auto dim = static_cast<double>(custom->density_matrix.rows());
    const int c = static_cast<int>(std::lround(std::pow(dim, 1.0 / static_cast<double>(modes)))) - 1;
    const FockSpace space(modes, c);
    if (space.dimension() != static_cast<std::size_t>(custom->density_matrix.rows())) {
      throw std::invalid_argument("custom density matrix dimension is not (n_max+1)^modes");
    }
    return DensityState::from_density_matrix(space, custom->density_matrix);
  }
  validate(spec);
  if (spec_modes(spec) != modes) {
    throw std::invalid_argument("state needs one parameter per mode (" + std::to_string(modes) + ")");
  }

  int c = 0;
  if (cutoff) {
    c = *cutoff;
    if (c < 1 || c > tol::max_fock_cutoff) {
      throw CutoffError("Fock cutoff must lie in [1, " + std::to_string(tol::max_fock_cutoff) + "]",
                        std::clamp(c, 1, tol::max_fock_cutoff));
    }
    const double leak = truncation_leakage(spec, c);
    if (leak >= tol::cutoff) {
      throw CutoffError("Fock cutoff " + std::to_string(c) + " truncates probability " + std::to_string(leak),
                        first_cutoff_below(spec, kTailHorizon / 2));
    }
  } else {
    c = default_cutoff(spec);
  }
  const FockSpace space(modes, c);
  const int levels = c + 1;

  return std::visit(
      [&](const auto& s) -> DensityState {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, CoherentSpec>) {
          std::vector<std::vector<complex>> factors;
          for (std::size_t m = 0; m < modes; ++m) factors.push_back(coherent_amplitudes(s.amplitudes[m], levels));
          return DensityState::pure(space, kron_all(factors));
        } else if constexpr (std::is_same_v<S, FockSpec>) {
          for (int n : s.occupations) check_finite_nonneg(n, "Fock occupation");
          Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()));
          v(static_cast<Eigen::Index>(space.index(s.occupations))) = 1.0;
          return DensityState::pure(space, std::move(v));
        } else if constexpr (std::is_same_v<S, ThermalSpec>) {
          std::vector<std::vector<double>> dists;
          for (std::size_t m = 0; m < modes; ++m) {
            const double nbar = per_mode(s.mean_photons, m, modes, "thermal mean photon number");
            check_finite_nonneg(nbar, "thermal mean photon number");
            std::vector<double> p(static_cast<std::size_t>(levels));
            const double ratio = nbar / (1.0 + nbar);
            double total = 0.0;
            for (int n = 0; n < levels; ++n) {
              p[static_cast<std::size_t>(n)] = std::pow(ratio, n) / (1.0 + nbar);
              total += p[static_cast<std::size_t>(n)];
            }
            for (double& x : p) x /= total;
            dists.push_back(std::move(p));
          }
          std::vector<double> probs(space.dimension());
          for (std::size_t i = 0; i < space.dimension(); ++i) {
            const auto occ = space.occupations(i);
            double p = 1.0;
            for (std::size_t m = 0; m < modes; ++m) p *= dists[m][static_cast<std::size_t>(occ[m])];
            probs[i] = p;
          }
          const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
          for (double& p : probs) p /= total;
          const auto dim = static_cast<Eigen::Index>(space.dimension());
          return DensityState(space, std::move(probs), Eigen::MatrixXcd::Identity(dim, dim));
        } else if constexpr (std::is_same_v<S, SqueezedVacuumSpec>) {
          std::vector<std::vector<complex>> factors;
          for (std::size_t m = 0; m < modes; ++m) {
            const double r = per_mode(s.squeezing, m, modes, "squeezing");
            check_finite_nonneg(r, "squeezing");
            const double phase = s.phases.empty() ? 0.0 : per_mode(s.phases, m, modes, "squeezing phase");
            factors.push_back(squeezed_amplitudes(r, phase, levels));
          }
          return DensityState::pure(space, kron_all(factors));
        } else {
          throw std::logic_error("unreachable");
        }
      },
      spec);
}

// ---------------------------------------------------------------------------------------------
// Ladder operators

namespace {

// Occupation table of a space, row i = occupations(i).
std::vector<std::vector<int>> occupation_table(const FockSpace& space) {
  std::vector<std::vector<int>> table(space.dimension());
  for (std::size_t i = 0; i < space.dimension(); ++i) table[i] = space.occupations(i);
  return table;
}

}  // namespace

Eigen::VectorXcd apply_hopping(const FockSpace& space, std::size_t j, std::size_t k, const Eigen::VectorXcd& v) {
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(space.modes()), static_cast<Eigen::Index>(space.modes()));
  G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = 1.0;
  return apply_bilinear(space, G, v);
}

Eigen::MatrixXcd apply_bilinear(const FockSpace& space, const Eigen::MatrixXcd& G, const Eigen::MatrixXcd& columns) {
  const auto m = static_cast<Eigen::Index>(space.modes());
  if (G.rows() != m || G.cols() != m) throw StructuralError("bilinear coefficients do not match the mode count");
  if (static_cast<std::size_t>(columns.rows()) != space.dimension()) throw StructuralError("vector does not match the Fock space");
  const FockSpace ext = space.extended();
  const auto table = occupation_table(space);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(ext.dimension()), columns.cols());

  std::vector<int> occ(space.modes());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const auto& base = table[i];
    for (Eigen::Index k = 0; k < m; ++k) {
      const int nk = base[static_cast<std::size_t>(k)];
      if (nk == 0) continue;
      for (Eigen::Index j = 0; j < m; ++j) {
        const complex g = G(j, k);
        if (g == complex(0.0)) continue;
        occ = base;
        double amp = std::sqrt(double(nk));
        occ[static_cast<std::size_t>(k)] -= 1;
        amp *= std::sqrt(double(occ[static_cast<std::size_t>(j)] + 1));
        occ[static_cast<std::size_t>(j)] += 1;
        const auto target = static_cast<Eigen::Index>(ext.index(occ));
        out.row(target) += (g * amp) * columns.row(static_cast<Eigen::Index>(i));
      }
    }
  }
  return out;
}

Eigen::VectorXcd apply_annihilation(const FockSpace& space, std::size_t k, const Eigen::VectorXcd& v) {
  if (static_cast<std::size_t>(v.size()) != space.dimension()) throw StructuralError("vector does not match the Fock space");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    auto occ = space.occupations(i);
    const int n = occ[k];
    if (n == 0) continue;
    occ[k] -= 1;
    out(static_cast<Eigen::Index>(space.index(occ))) += std::sqrt(double(n)) * v(static_cast<Eigen::Index>(i));
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Moments

Eigen::MatrixXcd first_moments(const DensityState& state) {
  const auto& space = state.space();
  const auto m = static_cast<Eigen::Index>(space.modes());
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(m, m);
  for (std::size_t a = 0; a < state.rank(); ++a) {
    const Eigen::VectorXcd v = state.eigenvectors().col(static_cast<Eigen::Index>(a));
    std::vector<Eigen::VectorXcd> lowered;
    for (Eigen::Index k = 0; k < m; ++k) lowered.push_back(apply_annihilation(space, static_cast<std::size_t>(k), v));
    for (Eigen::Index j = 0; j < m; ++j) {
      for (Eigen::Index l = 0; l < m; ++l) {
        n(j, l) += state.probabilities()[a] * lowered[static_cast<std::size_t>(j)].dot(lowered[static_cast<std::size_t>(l)]);
      }
    }
  }
  return 0.5 * (n + n.adjoint());
}

Eigen::MatrixXcd operator_matrix_elements(const DensityState& state, const Eigen::MatrixXcd& G) {
  const auto& space = state.space();
  const FockSpace ext = space.extended();
  const Eigen::MatrixXcd image = apply_bilinear(space, G, state.eigenvectors());
  Eigen::MatrixXcd embedded(static_cast<Eigen::Index>(ext.dimension()), state.eigenvectors().cols());
  for (Eigen::Index a = 0; a < embedded.cols(); ++a) embedded.col(a) = space.embed(state.eigenvectors().col(a), ext);
  return embedded.adjoint() * image;
}

NumberMoments number_moments(const DensityState& state) {
  const auto& space = state.space();
  NumberMoments out;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const auto occ = space.occupations(i);
    const double n = std::accumulate(occ.begin(), occ.end(), 0.0);
    double population = 0.0;
    for (std::size_t a = 0; a < state.rank(); ++a) {
      population += state.probabilities()[a] *
                    std::norm(state.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)));
    }
    out.mean += population * n;
    out.second += population * n * n;
  }
  return out;
}

}  // namespace mqcrb

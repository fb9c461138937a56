#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "mqcrb/fock.hpp"
#include "mqcrb/grid.hpp"
#include "mqcrb/parameter_family.hpp"

namespace testing {

using mqcrb::complex;

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double max_rel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double s = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  return s == 0.0 ? 0.0 : (a - b).cwiseAbs().maxCoeff() / s;
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = complex(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

inline Eigen::VectorXcd random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = complex(g(rng), g(rng));
  return v.normalized();
}

// Finite mode space C^D: custom grid with unit weights, so modes are plain vectors.
inline mqcrb::GridPtr finite_grid(std::size_t d) {
  std::vector<double> axis(d), w(d, 1.0);
  for (std::size_t j = 0; j < d; ++j) axis[j] = static_cast<double>(j);
  return mqcrb::SampleGrid::custom(axis, w);
}

inline mqcrb::Mode to_mode(const mqcrb::GridPtr& g, const Eigen::VectorXcd& v) {
  return mqcrb::Mode(g, std::vector<complex>(v.data(), v.data() + v.size()));
}

// f_k(theta) = exp(-i sum_a theta_a K_a) e_k on C^D; derivative -i K_a e_k.
inline mqcrb::ParameterFamily unitary_family(const mqcrb::GridPtr& g, std::size_t modes,
                                             const std::vector<Eigen::MatrixXcd>& k) {
  std::vector<mqcrb::ParameterSpec> params;
  for (std::size_t a = 0; a < k.size(); ++a) params.push_back({"p" + std::to_string(a), "", 1.0});
  const auto d = static_cast<Eigen::Index>(g->size());
  auto eval = [g, k, d](std::size_t mode, std::span<const double> theta) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t a = 0; a < k.size(); ++a) h += theta[a] * k[a];
    const Eigen::MatrixXcd u = (complex(0.0, -1.0) * h).exp();
    return to_mode(g, u.col(static_cast<Eigen::Index>(mode)));
  };
  auto deriv = [g, k, d](std::size_t mode, std::size_t a) -> std::optional<mqcrb::Mode> {
    return to_mode(g, complex(0.0, -1.0) * k[a].col(static_cast<Eigen::Index>(mode)));
  };
  return mqcrb::ParameterFamily("unitary", g, modes, params, eval, deriv);
}

// Dense truncated ladder operators on `modes` modes, mode 0 most significant.
inline std::vector<Eigen::MatrixXcd> ladder(std::size_t modes, int cutoff) {
  const int l = cutoff + 1;
  Eigen::MatrixXcd a1 = Eigen::MatrixXcd::Zero(l, l);
  for (int n = 1; n < l; ++n) a1(n - 1, n) = std::sqrt(double(n));
  std::vector<Eigen::MatrixXcd> out;
  for (std::size_t k = 0; k < modes; ++k) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t m = 0; m < modes; ++m) {
      const Eigen::MatrixXcd f = m == k ? a1 : Eigen::MatrixXcd::Identity(l, l);
      Eigen::MatrixXcd next(op.rows() * l, op.cols() * l);
      for (Eigen::Index i = 0; i < op.rows(); ++i)
        for (Eigen::Index j = 0; j < op.cols(); ++j) next.block(i * l, j * l, l, l) = op(i, j) * f;
      op = next;
    }
    out.push_back(op);
  }
  return out;
}

inline Eigen::MatrixXcd bilinear(const std::vector<Eigen::MatrixXcd>& a, const Eigen::MatrixXcd& g) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(a[0].rows(), a[0].cols());
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t k = 0; k < a.size(); ++k)
      h += g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) * a[j].adjoint() * a[k];
  return h;
}

// SLD-based QFIM over the complete eigenbasis: sum 2 (p_a - p_b)^2 / (p_a + p_b) Re(H_ab H'_ba).
inline Eigen::MatrixXd sld_qfim(const Eigen::MatrixXcd& rho, const std::vector<Eigen::MatrixXcd>& h) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
  const Eigen::VectorXd p = eig.eigenvalues();
  const Eigen::MatrixXcd v = eig.eigenvectors();
  const auto n = static_cast<Eigen::Index>(h.size());
  std::vector<Eigen::MatrixXcd> hb;
  for (const auto& x : h) hb.push_back(v.adjoint() * x * v);
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index al = 0; al < n; ++al)
    for (Eigen::Index be = 0; be < n; ++be)
      for (Eigen::Index a = 0; a < p.size(); ++a)
        for (Eigen::Index b = 0; b < p.size(); ++b) {
          const double s = p(a) + p(b);
          if (s < 1e-14) continue;
          const double d = p(a) - p(b);
          f(al, be) += 2.0 * d * d / s * (hb[al](a, b) * hb[be](b, a)).real();
        }
  return f;
}

// Tr(rho [L_a, L_b]) / (4i) with L = sum 2 <a|d rho|b> / (p_a + p_b), d rho = -i [H, rho].
inline Eigen::MatrixXd sld_commutator(const Eigen::MatrixXcd& rho, const std::vector<Eigen::MatrixXcd>& h) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
  const Eigen::VectorXd p = eig.eigenvalues();
  const Eigen::MatrixXcd v = eig.eigenvectors();
  std::vector<Eigen::MatrixXcd> sld;
  for (const auto& x : h) {
    const Eigen::MatrixXcd drho = v.adjoint() * (complex(0, -1) * (x * rho - rho * x)) * v;
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(p.size(), p.size());
    for (Eigen::Index a = 0; a < p.size(); ++a)
      for (Eigen::Index b = 0; b < p.size(); ++b)
        if (p(a) + p(b) > 1e-14) l(a, b) = 2.0 * drho(a, b) / (p(a) + p(b));
    sld.push_back(l);
  }
  const Eigen::MatrixXcd rb = v.adjoint() * rho * v;
  const auto n = static_cast<Eigen::Index>(h.size());
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      u(a, b) = ((rb * (sld[a] * sld[b] - sld[b] * sld[a])).trace() / complex(0, 4)).real();
  return u;
}

// Random state on `modes` modes with total photon number <= cutoff; rank 1 when pure.
inline Eigen::MatrixXcd random_number_bounded_state(std::mt19937_64& rng, std::size_t modes, int cutoff, int rank) {
  const mqcrb::FockSpace space(modes, cutoff);
  const auto dim = static_cast<Eigen::Index>(space.dimension());
  std::uniform_real_distribution<double> u(0.1, 1.0);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  double total = 0.0;
  for (int r = 0; r < rank; ++r) {
    Eigen::VectorXcd v = random_vector(rng, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto occ = space.occupations(static_cast<std::size_t>(i));
      int n = 0;
      for (int o : occ) n += o;
      if (n > cutoff) v(i) = 0.0;
    }
    v.normalize();
    const double w = u(rng);
    rho += w * v * v.adjoint();
    total += w;
  }
  return rho / total;
}

// Embeds a state on the first `inner` modes into `outer` modes with the rest in vacuum.
inline Eigen::MatrixXcd embed_vacuum(const Eigen::MatrixXcd& rho, std::size_t inner, std::size_t outer, int cutoff) {
  const mqcrb::FockSpace small(inner, cutoff), big(outer, cutoff);
  const auto dim = static_cast<Eigen::Index>(big.dimension());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Eigen::Index> map(small.dimension());
  for (std::size_t i = 0; i < small.dimension(); ++i) {
    auto occ = small.occupations(i);
    occ.resize(outer, 0);
    map[i] = static_cast<Eigen::Index>(big.index(occ));
  }
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = 0; j < map.size(); ++j)
      out(map[i], map[j]) = rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

}  // namespace testing

#include <doctest.h>

#include "helpers.hpp"
#include "mqcrb/errors.hpp"
#include "mqcrb/fock.hpp"
#include "mqcrb/gaussian_state.hpp"
#include "mqcrb/mode_basis.hpp"
#include "mqcrb/tolerances.hpp"

using namespace mqcrb;
using testing::rel;

namespace {

double variance(const DensityState& s) {
  const auto m = number_moments(s);
  return m.second - m.mean * m.mean;
}

std::vector<StateSpec> builtin_specs() {
  return {CoherentSpec{{complex(2.0, 0.0)}}, CoherentSpec{{complex(1.0, -2.0)}}, FockSpec{{3}}, ThermalSpec{{0.5}},
          ThermalSpec{{2.0}}, SqueezedVacuumSpec{{0.5}, {0.3}}};
}

}  // namespace

TEST_CASE("make_state examples") {
  const auto fock = make_state(FockSpec{{3}});
  CHECK(number_moments(fock).mean == doctest::Approx(3.0));
  CHECK(std::abs(variance(fock)) < 1e-12);

  const auto coh = make_state(CoherentSpec{{complex(2.0, 0.0)}});
  CHECK(rel(number_moments(coh).mean, 4.0) < 1e-9);
  CHECK(rel(variance(coh), 4.0) < 1e-8);
  CHECK(coh.is_pure());

  // thermal: <N^2> = sum n^2 (1-q) q^n = 2 nbar^2 + nbar
  const auto th = make_state(ThermalSpec{{1.0}});
  double oracle = 0.0;
  for (int n = 0; n < 200; ++n) oracle += n * n * std::pow(0.5, n + 1);
  CHECK(rel(number_moments(th).second, oracle) < tol::cutoff * std::pow(default_cutoff(ThermalSpec{{1.0}}) + 1.0, 2));
  CHECK(rel(oracle, 3.0) < 1e-12);
  // thermal eigenvalues follow the geometric law
  const auto& p = th.probabilities();
  CHECK(rel(p[1] / p[0], 0.5) < 1e-12);
}

TEST_CASE("make_state cutoff errors carry a suggestion") {
  try {
    make_state(CoherentSpec{{complex(3.0, 0.0)}}, 1, 4);
    FAIL("expected a cutoff error");
  } catch (const CutoffError& e) {
    CHECK(e.suggested_cutoff() > 4);
    CHECK(truncation_leakage(CoherentSpec{{complex(3.0, 0.0)}}, e.suggested_cutoff()) < tol::cutoff);
  }
  CHECK_THROWS_AS(make_state(ThermalSpec{{50.0}}), CutoffError);
  CHECK_THROWS_AS(make_state(ThermalSpec{{-1.0}}), std::invalid_argument);
}

TEST_CASE("trace preservation and eigenvector orthonormality for every constructor") {
  for (const auto& spec : builtin_specs()) {
    const auto s = make_state(spec);
    double total = 0.0;
    for (double p : s.probabilities()) {
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(std::abs(total - 1.0) < tol::trace);
    const auto& v = s.eigenvectors();
    const Eigen::MatrixXcd g = v.adjoint() * v;
    CHECK((g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() < tol::eigvec);
    CHECK(s.boundary_population() < tol::cutoff);
  }
}

TEST_CASE("first_moments examples") {
  const auto vac = make_state(FockSpec{{0, 0}}, 2);
  CHECK(first_moments(vac).cwiseAbs().maxCoeff() == 0.0);

  const auto coh = make_state(CoherentSpec{{complex(2.0, 0.0), complex(0.0, 0.0)}}, 2);
  const auto n = first_moments(coh);
  CHECK(rel(n(0, 0).real(), 4.0) < 1e-9);
  CHECK(std::abs(n(0, 1)) < 1e-12);
  CHECK(std::abs(n(1, 1)) < 1e-12);

  // (|1,0> + |0,1>)/sqrt2 against dense ladder operators
  const FockSpace space(2, 1);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(space.index(std::vector<int>{1, 0})) = M_SQRT1_2;
  v(space.index(std::vector<int>{0, 1})) = M_SQRT1_2;
  const auto s = DensityState::pure(space, v);
  const auto a = testing::ladder(2, 1);
  const auto m = first_moments(s);
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) {
      const complex oracle = v.dot(a[j].adjoint() * a[l] * v);
      CHECK(std::abs(m(j, l) - oracle) < 1e-14);
    }
  CHECK(std::abs(m(0, 1) - 0.5) < 1e-14);
}

TEST_CASE("first_moments is Hermitian with trace <N>") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto rho = testing::random_number_bounded_state(rng, 2, 3, 3);
    const auto s = DensityState::from_density_matrix(FockSpace(2, 3), rho);
    const auto n = first_moments(s);
    CHECK((n - n.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(n.trace().real() - number_moments(s).mean) < 1e-12);
  }
}

TEST_CASE("operator_matrix_elements examples") {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(1, 1);
  const auto fock = make_state(FockSpec{{2}});
  CHECK(std::abs(operator_matrix_elements(fock, id)(0, 0) - 2.0) < 1e-14);
  const auto coh = make_state(CoherentSpec{{complex(1.5, 0.5)}});
  CHECK(rel(operator_matrix_elements(coh, id)(0, 0).real(), 2.5) < 1e-9);

  // hopping between |1,0> and |0,1>
  const FockSpace space(2, 1);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  const auto i10 = space.index(std::vector<int>{1, 0});
  const auto i01 = space.index(std::vector<int>{0, 1});
  rho(i10, i10) = 0.7;
  rho(i01, i01) = 0.3;
  const auto s = DensityState::from_density_matrix(space, rho);
  Eigen::Matrix2cd g;
  g << 0, 1, 1, 0;
  const auto m = operator_matrix_elements(s, g);
  REQUIRE(m.rows() == 2);
  CHECK(std::abs(std::abs(m(0, 1)) - 1.0) < 1e-14);
  CHECK(std::abs(m(0, 0)) < 1e-14);
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("number_moments examples") {
  const auto f2 = number_moments(make_state(FockSpec{{2}}));
  CHECK(f2.mean == doctest::Approx(2.0));
  CHECK(f2.second == doctest::Approx(4.0));
  const auto c = number_moments(make_state(CoherentSpec{{complex(std::sqrt(3.0), 0.0)}}));
  CHECK(rel(c.mean, 3.0) < 1e-9);
  CHECK(rel(c.second, 12.0) < 1e-8);
  const auto t = number_moments(make_state(ThermalSpec{{0.5}}));
  double oracle = 0.0;  // sum n^2 nbar^n / (1+nbar)^(n+1)
  for (int n = 0; n < 200; ++n) oracle += n * n * std::pow(0.5, n) / std::pow(1.5, n + 1);
  const double bound = tol::cutoff * std::pow(default_cutoff(ThermalSpec{{0.5}}) + 1.0, 2);
  CHECK(rel(t.mean, 0.5) < bound);
  CHECK(rel(t.second, oracle) < bound);
  CHECK(rel(oracle, 1.0) < 1e-12);
  CHECK(t.second >= t.mean * t.mean);
}

TEST_CASE("raising the cutoff by four barely moves any moment") {
  for (const auto& spec : builtin_specs()) {
    const int c = default_cutoff(spec);
    const auto lo = make_state(spec, 1, c);
    const auto hi = make_state(spec, 1, c + 4);
    const double bound = tol::cutoff * (c + 4) * (c + 4);
    const auto ml = number_moments(lo), mh = number_moments(hi);
    CHECK(rel(ml.mean, mh.mean) < bound);
    CHECK(rel(ml.second, mh.second) < bound);
    const auto gl = gaussian_moments(lo), gh = gaussian_moments(hi);
    CHECK((gl.covariance() - gh.covariance()).cwiseAbs().maxCoeff() < bound * gh.covariance().cwiseAbs().maxCoeff());
  }
}

TEST_CASE("GaussianState uncertainty checks") {
  CHECK(GaussianState::vacuum(2).uncertainty_margin() > -1e-12);
  CHECK(GaussianState::squeezed(1, 0, 1.2, 0.7).uncertainty_margin() > -1e-10);
  Eigen::Matrix2d bad;
  bad << 0.5, 0, 0, 0.5;
  CHECK_THROWS_AS(GaussianState(Eigen::Vector2d::Zero(), bad), StructuralError);
  Eigen::Matrix2d asym;
  asym << 1, 0.2, 0, 1;
  CHECK_THROWS_AS(GaussianState(Eigen::Vector2d::Zero(), asym), StructuralError);
  for (const auto& spec : builtin_specs()) CHECK(gaussian_moments(make_state(spec)).uncertainty_margin() > -1e-10);
}

TEST_CASE("squeezed vacuum Fock amplitudes reproduce the Gaussian covariance") {
  const double r = 0.6, phi = 0.9;
  const auto fock = gaussian_moments(make_state(SqueezedVacuumSpec{{r}, {phi}}));
  const auto gauss = GaussianState::squeezed(1, 0, r, phi);
  CHECK((fock.covariance() - gauss.covariance()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(rel(fock.covariance()(0, 0), std::exp(-2 * r) * 0 + std::cosh(2 * r) - std::sinh(2 * r) * std::cos(phi)) < 1e-8);
  CHECK(fock.mean().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("quadrature_covariance examples") {
  const auto g = testing::finite_grid(3);
  const ModeBasis ref({testing::to_mode(g, Eigen::Vector3cd(1, 0, 0)), testing::to_mode(g, Eigen::Vector3cd(0, 1, 0))});

  SUBCASE("vacuum, orthonormal targets") {
    std::vector<DetectionMode> t = {detection_mode(testing::to_mode(g, Eigen::Vector3cd(0, 2, 0))),
                                    detection_mode(testing::to_mode(g, Eigen::Vector3cd(0, 0, 3)))};
    const auto cov = quadrature_covariance(GaussianState::vacuum(2), t, ref);
    CHECK((cov - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("vacuum, overlapping targets") {
    const complex delta(0.3, 0.4);
    // f~ = i f / w, so pass derivatives -i f~ to get the intended detection modes
    const Eigen::Vector3cd ta(1, 0, 0), tb(delta, 0, std::sqrt(1 - std::norm(delta)));
    std::vector<DetectionMode> t = {detection_mode(testing::to_mode(g, complex(0, -1) * ta)),
                                    detection_mode(testing::to_mode(g, complex(0, -1) * tb))};
    const auto cov = quadrature_covariance(GaussianState::vacuum(2), t, ref);
    CHECK(std::abs(cov(0, 1) - delta.real()) < 1e-15);
    CHECK(std::abs(cov(1, 1) - 1.0) < 1e-15);
  }
  SUBCASE("squeezed vacuum aligned with the target") {
    const double r = 0.4;
    std::vector<DetectionMode> t = {detection_mode(testing::to_mode(g, Eigen::Vector3cd(0, 0, 0) + complex(0, -1) * Eigen::Vector3cd(1, 0, 0)))};
    const auto cov = quadrature_covariance(GaussianState::squeezed(2, 0, r), t, ref);
    CHECK(rel(cov(0, 0), std::exp(-2 * r)) < 1e-14);
  }
}

TEST_CASE("coherent state covariance agrees between Fock and Gaussian pictures") {
  const std::vector<complex> alpha = {complex(1.2, -0.4), complex(0.3, 0.8)};
  const auto fock = gaussian_moments(make_state(CoherentSpec{alpha}, 2));
  const auto gauss = GaussianState::coherent(alpha);
  CHECK((fock.covariance() - gauss.covariance()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((fock.mean() - gauss.mean()).cwiseAbs().maxCoeff() < 1e-8);

  const auto g = testing::finite_grid(3);
  const ModeBasis ref({testing::to_mode(g, Eigen::Vector3cd(1, 0, 0)), testing::to_mode(g, Eigen::Vector3cd(0, 1, 0))});
  std::vector<DetectionMode> t = {detection_mode(testing::to_mode(g, Eigen::Vector3cd(0.6, complex(0, 0.8), 0))),
                                  detection_mode(testing::to_mode(g, Eigen::Vector3cd(0.5, 0.5, M_SQRT1_2)))};
  const auto a = quadrature_covariance(fock, t, ref);
  const auto b = quadrature_covariance(gauss, t, ref);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-8);
}

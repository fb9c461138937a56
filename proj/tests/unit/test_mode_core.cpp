#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "mqcrb/errors.hpp"
#include "mqcrb/families.hpp"
#include "mqcrb/mode_basis.hpp"
#include "mqcrb/tolerances.hpp"

using namespace mqcrb;
using testing::rel;

namespace {

Mode gaussian_1d(const GridPtr& g, double shift, int order = 0) {
  std::vector<complex> s(g->size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double x = g->coordinate(j, 0) - shift;
    const double base = std::pow(2.0 / std::numbers::pi, 0.25) * std::exp(-x * x);
    s[j] = order == 0 ? base : 2.0 * x * base;
  }
  return Mode(g, std::move(s));
}

Mode gaussian_2d(const GridPtr& g, double dx) {
  std::vector<complex> s(g->size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double x = g->coordinate(j, 0) - dx, y = g->coordinate(j, 1);
    s[j] = std::sqrt(2.0 / std::numbers::pi) * std::exp(-(x * x + y * y));
  }
  return Mode(g, std::move(s));
}

}  // namespace

TEST_CASE("inner product of a normalized mode with itself is one") {
  const auto g = SampleGrid::uniform(-8, 8, 801);
  const Mode f = gaussian_1d(g, 0.0);
  const complex v = inner_product(f, f);
  CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.imag() == 0.0);
}

TEST_CASE("fundamental and first Hermite-Gaussian are orthogonal") {
  const auto g = SampleGrid::uniform(-8, 8, 801);
  CHECK(std::abs(inner_product(gaussian_1d(g, 0.0), gaussian_1d(g, 0.0, 1))) < 1e-14);
}

TEST_CASE("displaced 2D Gaussian overlap matches the analytic integral") {
  // |(f|f_d)| = exp(-d^2 / (2 w0^2)) for amplitude exp(-r^2/w0^2)
  for (std::size_t n : {256u, 1024u}) {
    const auto g = SampleGrid::uniform(-5, 6, n, -5, 5, n);
    const complex v = inner_product(gaussian_2d(g, 0.0), gaussian_2d(g, 1.0));
    CHECK(rel(v.real(), std::exp(-0.5)) < 1e-9);
  }
}

TEST_CASE("inner product is exactly conjugate symmetric") {
  std::mt19937_64 rng(7);
  const auto g = testing::finite_grid(16);
  for (int t = 0; t < 20; ++t) {
    const Mode a = testing::to_mode(g, testing::random_vector(rng, 16));
    const Mode b = testing::to_mode(g, testing::random_vector(rng, 16));
    CHECK(inner_product(a, b) == std::conj(inner_product(b, a)));
  }
}

TEST_CASE("grid mismatch is a structural error") {
  const Mode a = Mode::zero(SampleGrid::uniform(0, 1, 10));
  const Mode b = Mode::zero(SampleGrid::uniform(0, 1, 11));
  CHECK_THROWS_AS(inner_product(a, b), StructuralError);
}

TEST_CASE("grid and mode validation") {
  CHECK_THROWS_AS(SampleGrid::custom({0.0, 0.0}, {1.0, 1.0}), StructuralError);
  CHECK_THROWS_AS(SampleGrid::custom({0.0, 1.0}, {1.0, 0.0}), StructuralError);
  CHECK_THROWS_AS(SampleGrid::custom({0.0, 1.0}, {1.0}), StructuralError);
  const auto g = SampleGrid::uniform(0, 1, 2);
  CHECK_THROWS_AS(Mode(g, {complex(std::nan(""), 0.0), 0.0}), EvaluationError);
}

TEST_CASE("gram_schmidt on an orthonormal pair gives identity coefficients") {
  const auto g = testing::finite_grid(3);
  const auto e0 = testing::to_mode(g, Eigen::Vector3cd(1, 0, 0));
  const auto e1 = testing::to_mode(g, Eigen::Vector3cd(0, 1, 0));
  const auto gs = gram_schmidt({e0, e1});
  CHECK((gs.transform - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("gram_schmidt second mode for overlap 0.3+0.4i") {
  const complex delta(0.3, 0.4);
  const auto g = testing::finite_grid(2);
  const auto fa = testing::to_mode(g, Eigen::Vector2cd(1, 0));
  const auto fb = testing::to_mode(g, Eigen::Vector2cd(delta, std::sqrt(1.0 - std::norm(delta))));
  REQUIRE(std::abs(inner_product(fa, fb) - delta) < 1e-15);
  const auto gs = gram_schmidt({fa, fb});
  const double c = 1.0 / std::sqrt(1.0 - 0.25);
  CHECK(rel(std::abs(gs.transform(1, 1)), c) < 1e-14);
  // (f_b - f_a delta) / sqrt(1 - |delta|^2)
  const Mode expected = fb.axpy(-delta, fa).scaled(c);
  CHECK(std::abs(inner_product(expected, gs.basis[1]) - 1.0) < 1e-14);
}

TEST_CASE("gram_schmidt of random modes matches a Cholesky orthogonalization oracle") {
  std::mt19937_64 rng(11);
  const auto g = SampleGrid::uniform(0, 1, 40);
  std::vector<Mode> in;
  Eigen::MatrixXcd a(40, 3);
  for (int k = 0; k < 3; ++k) {
    std::normal_distribution<double> n;
    std::vector<complex> s(40);
    for (auto& x : s) x = complex(n(rng), n(rng));
    in.emplace_back(g, s);
  }
  const auto gs = gram_schmidt(in);
  const Eigen::MatrixXcd gram = gram_matrix(gs.basis.modes());
  CHECK((gram - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  // Oracle: input Gram S = R^dag R (Cholesky), output = inputs R^-1.
  const Eigen::MatrixXcd s = gram_matrix(in);
  const Eigen::LLT<Eigen::MatrixXcd> llt(s);
  const Eigen::MatrixXcd r = llt.matrixU();
  const Eigen::MatrixXcd rinv = r.inverse();
  CHECK((gs.transform - rinv).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("gram_schmidt reports the dependent index") {
  const auto g = testing::finite_grid(3);
  const auto a = testing::to_mode(g, Eigen::Vector3cd(1, 0, 0));
  const auto b = testing::to_mode(g, Eigen::Vector3cd(0, 1, 0));
  const auto c = a.axpy(complex(0, 2), b);
  try {
    gram_schmidt({a, b, c});
    FAIL("expected rank deficiency");
  } catch (const RankDeficiencyError& e) {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("gram_schmidt is idempotent") {
  std::mt19937_64 rng(5);
  const auto g = testing::finite_grid(6);
  std::vector<Mode> in;
  for (int k = 0; k < 4; ++k) in.push_back(testing::to_mode(g, testing::random_vector(rng, 6)));
  const auto once = gram_schmidt(in);
  const auto twice = gram_schmidt(once.basis.modes());
  CHECK((twice.transform - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < tol::orth);
}

TEST_CASE("ModeBasis rejects non-orthonormal modes") {
  const auto g = testing::finite_grid(2);
  const auto a = testing::to_mode(g, Eigen::Vector2cd(1, 0));
  const auto b = testing::to_mode(g, Eigen::Vector2cd(0.1, 1));
  CHECK_THROWS_AS(ModeBasis({a, b}), StructuralError);
}

TEST_CASE("beam derivative modes: x0 and tilt norms") {
  const BeamGeometry geo{1.0, 10.0};
  const auto fam = gaussian_beam_family(geo);
  const Mode fx = derivative_mode(fam, 0, 0);
  CHECK(rel(fx.norm(), 1.0 / geo.waist) < 1e-6);
  const Mode fa = derivative_mode(fam, 0, 4);
  CHECK(rel(fa.norm(), geo.wave_number * geo.waist / 2.0) < 1e-6);
  // f^x0 = (2x/w0^2) f sample by sample
  const Mode f = fam.reference_mode(0);
  for (std::size_t j : {100u, 30000u, 40000u}) {
    const double x = fam.grid()->coordinate(j, 0);
    CHECK(std::abs(fx[j] - 2.0 * x * f[j]) < 1e-14);
  }
}

TEST_CASE("parameter without effect gives a zero, degenerate derivative") {
  const auto g = testing::finite_grid(3);
  const auto e0 = testing::to_mode(g, Eigen::Vector3cd(1, 0, 0));
  ParameterFamily fam("static", g, 1, {{"inert", "", 1.0}}, [e0](std::size_t, std::span<const double>) { return e0; });
  const Mode d = derivative_mode(fam, 0, 0, DerivativeMethod::finite_difference);
  CHECK(d.norm() == 0.0);
  const DetectionMode dm = detection_mode(d, "inert");
  CHECK(dm.degenerate);
  CHECK(dm.weight == 0.0);
}

TEST_CASE("detection_mode normalizes and rotates by i") {
  const auto g = testing::finite_grid(2);
  const Mode d = testing::to_mode(g, Eigen::Vector2cd(2, 0));
  const DetectionMode dm = detection_mode(d);
  CHECK(dm.weight == 2.0);
  CHECK(!dm.degenerate);
  CHECK(std::abs(dm.mode[0] - complex(0, 1)) < 1e-15);
  CHECK(rel(dm.mode.norm(), 1.0) < 1e-15);
}

TEST_CASE("pulse t_phi detection mode is -u with weight omega0") {
  const PulseSpectrum spec{10.0, 1.0};
  const auto fam = gaussian_pulse_family(spec);
  const DetectionMode dm = detection_mode(derivative_mode(fam, 0, 0));
  CHECK(rel(dm.weight, spec.center) < 1e-9);
  const Mode u = fam.reference_mode(0);
  CHECK(std::abs(inner_product(u, dm.mode) + 1.0) < 1e-9);
}

TEST_CASE("vacuum_overlap") {
  const auto fam = gaussian_beam_family({1.0, 10.0});
  const ModeBasis basis = fam.basis();
  const Mode f = basis[0];
  CHECK(std::abs(vacuum_overlap(f, f, basis)) < 1e-12);
  const Mode phase = f.scaled(complex(0, -3));
  CHECK(std::abs(vacuum_overlap(phase, phase, basis)) < 1e-12);
  const Mode fx = derivative_mode(fam, 0, 0);
  CHECK(rel(vacuum_overlap(fx, fx, basis).real(), 1.0) < 1e-6);
  // Hermitian in its two arguments
  const Mode fz = derivative_mode(fam, 0, 2);
  CHECK(std::abs(vacuum_overlap(fx, fz, basis) - std::conj(vacuum_overlap(fz, fx, basis))) < 1e-15);
}

TEST_CASE("analytic and finite-difference derivatives agree for every built-in parameter") {
  const std::vector<ParameterFamily> fams = {gaussian_beam_family({1.0, 10.0}), gaussian_beam_family({1.0, 10.0}, true),
                                             gaussian_pulse_family({10.0, 1.0}), displaced_beam_family(1.0)};
  for (const auto& fam : fams) {
    for (std::size_t a = 0; a < fam.parameter_count(); ++a) {
      const Mode an = derivative_mode(fam, 0, a, DerivativeMethod::analytic);
      const Mode fd = derivative_mode(fam, 0, a, DerivativeMethod::finite_difference);
      INFO(fam.name(), " ", fam.labels()[a]);
      CHECK(fd.axpy(-1.0, an).norm() / an.norm() < tol::fd);
    }
  }
}

TEST_CASE("built-in families preserve normalization to first order") {
  const std::vector<ParameterFamily> fams = {gaussian_beam_family({1.0, 10.0}), gaussian_beam_family({0.7, 3.0}, true),
                                             gaussian_pulse_family({10.0, 1.0}), displaced_beam_family(2.0)};
  for (const auto& fam : fams) {
    const Mode f = fam.reference_mode(0);
    for (std::size_t a = 0; a < fam.parameter_count(); ++a) {
      const Mode d = derivative_mode(fam, 0, a);
      CHECK(std::abs(inner_product(f, d).real()) < tol::quad * std::max(1.0, d.norm()));
    }
  }
}

TEST_CASE("doubling the grid resolution leaves overlaps unchanged") {
  for (const std::string name : {"gaussian-beam", "gaussian-beam-carrier", "gaussian-pulse", "displaced-beam"}) {
    const bool pulse = name == "gaussian-pulse";
    const auto coarse = make_family(name, {}, {pulse ? 2048u : 256u});
    const auto fine = make_family(name, {}, {pulse ? 4096u : 512u});
    for (std::size_t a = 0; a < coarse.parameter_count(); ++a) {
      for (std::size_t b = 0; b < coarse.parameter_count(); ++b) {
        const complex c = inner_product(derivative_mode(coarse, 0, a), derivative_mode(coarse, 0, b));
        const complex f = inner_product(derivative_mode(fine, 0, a), derivative_mode(fine, 0, b));
        const double scale = derivative_mode(fine, 0, a).norm() * derivative_mode(fine, 0, b).norm();
        INFO(name, " ", a, " ", b);
        CHECK(std::abs(c - f) < tol::quad * scale);
      }
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "arcgas/grunsky.hpp"

using namespace arcgas;

namespace {
struct Fixture {
  EquilibriumData eq;
  GrunskyMatrix B;
  Fixture(const ArcSpec& a, int N, int M = 512) {
    const auto c = open_arc(a);
    const auto m = exterior_map(c);
    eq = z_e_at_cheb_nodes(c, m, M);
    B = grunsky_coeffs(eq, N);
  }
};

}  // namespace

TEST_CASE("interval: B vanishes") {
  Fixture f(make_interval(), 32);
  CHECK(f.B.a_full.cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(fredholm_logdet(f.B).logdet) < 1e-10);
}

TEST_CASE("circular arcs: a_00 and the parity pattern") {
  for (double alpha : {M_PI / 3, M_PI / 2}) {
    Fixture f(make_circular_arc(alpha), 32);
    CHECK(f.B.a00 == doctest::Approx(-0.5 * std::log(2 * f.eq.cap)).epsilon(1e-8));
    CHECK(f.B.symmetry_defect < 1e-12);
    for (int k = 1; k <= 32; ++k)
      for (int l = 1; l <= 32; ++l)
        if (k % 2 == 0 || l % 2 == 0) CHECK(std::abs(f.B.a_full(k, l)) < 1e-9);
    for (int l = 1; l <= 32; ++l) CHECK(std::abs(f.B.a_full(0, l)) < 1e-12);
    CHECK(f.B.b.norm() > 1e-3);
  }
}

TEST_CASE("Fredholm determinant of the semicircle: -12 log det = 3 log 2") {
  Fixture f(make_circular_arc(M_PI / 2), 64);
  CHECK(-12 * fredholm_logdet(f.B).logdet == doctest::Approx(3 * std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("logdet agrees with a dense LU determinant") {
  Fixture f(make_perturbed_arc({1.0, 0.5, -0.3}, 0.3), 48);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(48, 48);
  const double ld = std::log((I + f.B.b).partialPivLu().determinant());
  CHECK(fredholm_logdet(f.B).logdet == doctest::Approx(ld).epsilon(1e-10));
}

TEST_CASE("Grunsky inequality and the spectral gap") {
  Fixture f(make_perturbed_arc({1.0, 0.5, -0.3}, 0.3), 48);
  const auto sp = min_eigenvalue(f.B);
  CHECK(sp.lambda_min > -1);
  CHECK(sp.kappa < 1);
  CHECK(sp.kappa >= 0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd x(48);
    for (int k = 0; k < 48; ++k) x(k) = g(rng);
    CHECK(x.dot(x + f.B.b * x) >= (1 - sp.kappa) * x.squaredNorm() - 1e-12);
  }
}

TEST_CASE("quad_form reduces to the Euclidean product when B = 0") {
  Fixture f(make_interval(), 16);
  ScaledVector u, v;
  u.entries.assign(16, 0.0);
  v.entries.assign(16, 0.0);
  u.entries[0] = 1;
  u.entries[2] = 2;
  v.entries[2] = 3;
  CHECK(quad_form(f.B, u, v) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("quad_form against a dense solve, and solve_interp residual") {
  Fixture f(make_circular_arc(1.0), 40);
  ScaledVector u;
  u.entries.resize(40);
  for (int k = 0; k < 40; ++k) u.entries[k] = std::sin(k + 1.0) / (k + 1);
  Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(u.entries.data(), 40);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(40, 40);
  const double dense = x.dot((I + 0.5 * f.B.b).lu().solve(x));
  CHECK(quad_form(f.B, u, u, 0.5) == doctest::Approx(dense).epsilon(1e-12));
  const auto sol = solve_interp(f.B, u, 0.5, 3.0);
  CHECK(sol.residual < 1e-12);
  const Eigen::VectorXd h = Eigen::Map<const Eigen::VectorXd>(sol.h.entries.data(), 40);
  CHECK(((I + 0.5 * f.B.b) * h + x / 3.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("truncation keeps the leading block") {
  Fixture f(make_circular_arc(1.0), 24);
  const auto t = f.B.truncated(10);
  CHECK(t.N == 10);
  CHECK((t.b - f.B.b.topLeftCorner(10, 10)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("serialization round trip") {
  Fixture f(make_circular_arc(1.0), 16);
  const auto r = GrunskyMatrix::from_json(f.B.to_json());
  CHECK((r.b - f.B.b).cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.a00 == f.B.a00);
}

TEST_CASE("coefficients are stable under refining the quadrature") {
  Fixture a(make_perturbed_arc({1.0, 0.5, -0.3}, 0.3), 32, 512);
  Fixture b(make_perturbed_arc({1.0, 0.5, -0.3}, 0.3), 32, 1024);
  CHECK((a.B.b - b.B.b).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(fredholm_logdet(a.B).logdet - fredholm_logdet(b.B).logdet) < 1e-9);
}

TEST_CASE("Bf = m on the truncated range") {
  Fixture f(make_perturbed_arc({1.0, 0.5, -0.3}, 0.3), 128);
  const auto v = arc_vectors(f.eq, 128);
  CHECK(bf_consistency(f.B, v.f, v.m) < 1e-4);
}

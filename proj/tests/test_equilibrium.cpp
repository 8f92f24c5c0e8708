#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arcgas/equilibrium.hpp"
#include "arcgas/quadrature.hpp"

using namespace arcgas;

namespace {
struct Fixture {
  ArcSpec arc;
  OpenedCurve curve;
  LaurentMap map;
  EquilibriumData eq;
  explicit Fixture(const ArcSpec& a, int M = 512) : arc(a), curve(open_arc(a)), map(exterior_map(curve)) {
    eq = z_e_at_cheb_nodes(curve, map, M);
  }
};
}  // namespace

TEST_CASE("interval: z_e is the identity and nu_e the arcsine law") {
  Fixture f(make_interval());
  for (const auto& p : f.eq.nodes) CHECK(std::abs(p.z - cd(p.t, 0)) < 1e-12);
  for (double t : {-0.5, 0.2, 0.9}) {
    CHECK(f.eq.emap.tau_e(t) == doctest::Approx(t).epsilon(1e-12));
    CHECK(f.eq.emap.density(t) == doctest::Approx(1 / (M_PI * std::sqrt(1 - t * t))).epsilon(1e-10));
  }
  CHECK(f.eq.cap == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cheb_transform recovers a Chebyshev series") {
  const int M = 64;
  std::vector<double> s(M);
  for (int j = 0; j < M; ++j) {
    const double th = M_PI * (j + 0.5) / M;
    s[j] = 0.25 + std::cos(2 * th) - 0.5 * std::cos(5 * th);
  }
  const auto c = cheb_transform(s, 8);
  CHECK(c.c0 == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(c.coeff(2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.coeff(5) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(std::abs(c.coeff(1)) < 1e-14);
  CHECK(c.coeff(9) == 0.0);
  const auto v = ScaledVector::from_cheb(c, 8);
  CHECK(v.entries[4] == doctest::Approx(-0.5 * std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("equilibrium measure on the semicircle") {
  Fixture f(make_circular_arc(M_PI / 2));
  const auto d = equilibrium_density(f.eq);
  CHECK(std::abs(d.mass - 1) < 1e-8);
  CHECK(std::abs(d.endpoint_exponent_left + 0.5) < 0.1);
  CHECK(std::abs(d.endpoint_exponent_right + 0.5) < 0.1);
  CHECK(f.eq.cap == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));
  // symmetric arc: tau_e is odd
  for (double t : {0.1, 0.5, 0.93}) CHECK(f.eq.emap.tau_e(t) == doctest::Approx(-f.eq.emap.tau_e(-t)).epsilon(1e-10));
}

TEST_CASE("Frostman potential is constant and equals log cap") {
  Fixture f(make_perturbed_arc({1.0, 0.5, -0.3}, 0.3));
  const double lc = std::log(f.eq.cap);
  for (double t : {-0.97, -0.4, 0.0, 0.33, 0.8, 0.99}) CHECK(std::abs(frostman_potential(f.eq, t) - lc) < 1e-7);
}

TEST_CASE("tau_e is increasing and inverts z_e") {
  Fixture f(make_perturbed_arc({1.0, -0.6}, 0.3));
  const auto ts = tau_e(f.curve, f.map);
  for (std::size_t j = 1; j < ts.tau.size(); ++j) CHECK(ts.tau[j] > ts.tau[j - 1]);
  for (std::size_t j = 0; j < ts.tau.size(); j += 37) CHECK(std::abs(ts.tau[j] - ts.tau_psi[j]) < 1e-8);
  for (double t : {-0.9, -0.3, 0.25, 0.7}) {
    const double tau = f.eq.emap.tau_e(t);
    CHECK(std::abs(f.eq.emap.at_theta(std::acos(tau)).z - f.arc.point(t)) < 1e-9);
  }
}

TEST_CASE("m, d and f vectors") {
  Fixture f(make_circular_arc(M_PI / 3));
  const auto v = arc_vectors(f.eq, 32);
  CHECK(v.m_mean == doctest::Approx(-std::log(2 * f.eq.cap)).epsilon(1e-9));
  const auto m = m_vector(f.eq, 64);
  CHECK(m.eval(1.0) == doctest::Approx(-0.5 * std::log(f.eq.ze_prime_p1)).epsilon(1e-7));
  CHECK(m.eval(-1.0) == doctest::Approx(-0.5 * std::log(f.eq.ze_prime_m1)).epsilon(1e-7));
  const auto fv = f_vector(6);
  for (int k = 1; k <= 6; ++k) CHECK(fv.entries[k - 1] == doctest::Approx(k % 2 ? 0.0 : 2 / std::sqrt(double(k))));
  const auto e = z_e_prime_endpoints(f.eq);
  CHECK(e.p1 == doctest::Approx(f.eq.ze_prime_p1));
  CHECK(v.d_p1 == doctest::Approx(-std::log(e.p1)));
}

TEST_CASE("push-forward of the arcsine law is nu_e") {
  Fixture f(make_perturbed_arc({1.0, 0.5, -0.3}, 0.3));
  auto g = [](cd z) { return (z * z).real() + z.imag(); };
  double cheb = 0;
  for (const auto& p : f.eq.nodes) cheb += g(p.z);
  cheb /= f.eq.M;
  const Rule gl = gauss_legendre(400, 0.0, M_PI);
  double arcl = 0;
  for (int j = 0; j < gl.size(); ++j) {
    const double t = -std::cos(gl.x[j]);
    arcl += gl.w[j] * g(f.arc.point(t)) * f.eq.emap.density(t) * std::abs(f.arc.tangent(t)) * std::sin(gl.x[j]);
  }
  CHECK(std::abs(cheb - arcl) < 1e-8);
}

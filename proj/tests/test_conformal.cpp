#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arcgas/conformal.hpp"

using namespace arcgas;

TEST_CASE("fft round trip and a pure tone") {
  std::vector<cd> x(16);
  for (int j = 0; j < 16; ++j) x[j] = cd(std::cos(0.3 * j), std::sin(1.7 * j));
  const auto y = fourier::ifft(fourier::fft(x));
  for (int j = 0; j < 16; ++j) CHECK(std::abs(y[j] - x[j]) < 1e-14);
  std::vector<cd> t(8);
  for (int j = 0; j < 8; ++j) t[j] = std::polar(1.0, 2 * M_PI * 3 * j / 8);
  const auto T = fourier::fft(t);
  CHECK(std::abs(T[3] - 8.0) < 1e-13);
}

TEST_CASE("conjugate function of cos is sin") {
  std::vector<double> u(64);
  for (int j = 0; j < 64; ++j) u[j] = std::cos(5 * 2 * M_PI * j / 64);
  const auto v = fourier::conjugate(u);
  for (int j = 0; j < 64; ++j) CHECK(std::abs(v[j] - std::sin(5 * 2 * M_PI * j / 64)) < 1e-13);
}

TEST_CASE("Chebyshev coefficients of a polynomial") {
  const int M = 32;
  std::vector<double> s(M);
  for (int j = 0; j < M; ++j) {
    const double t = std::cos(M_PI * (j + 0.5) / M);
    s[j] = 2 * t * t * t + 0.5;  // = 0.5 + 1.5 T1 + 0.5 T3
  }
  const auto c = fourier::cheb_coeffs(s);
  CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(std::abs(c[2]) < 1e-14);
  CHECK(c[3] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(fourier::cheb_eval(c, 0.3) == doctest::Approx(2 * 0.027 + 0.5).epsilon(1e-14));
}

TEST_CASE("Douglas energy normalization and quadratic scaling") {
  std::vector<double> u(128);
  for (int k : {1, 2, 7}) {
    for (int j = 0; j < 128; ++j) u[j] = std::cos(k * 2 * M_PI * j / 128);
    CHECK(douglas_energy(DouglasSeries::from_samples(u)) == doctest::Approx(double(k)).epsilon(1e-12));
    for (auto& x : u) x *= 3;
    CHECK(douglas_energy(DouglasSeries::from_samples(u)) == doctest::Approx(9.0 * k).epsilon(1e-12));
  }
}

TEST_CASE("opened curve of the interval is the unit circle") {
  const auto c = open_arc(make_interval(), 256);
  for (double phi : {0.1, 1.0, 2.5, 4.0, 6.0}) CHECK(std::abs(std::abs(c.eta(phi)) - 1.0) < 1e-13);
  CHECK(c.qq_defect < 1e-13);
}

TEST_CASE("opened curve is invariant under w -> 1/w") {
  for (const auto& a : {make_circular_arc(M_PI / 2), make_perturbed_arc({1.0, 0.5, -0.3}, 0.3)}) {
    const auto c = open_arc(a, 512);
    CHECK(c.qq_defect < 1e-12);
    CHECK(c.inversion_defect < 1e-10);
    for (double t : {-0.8, 0.0, 0.45}) CHECK(std::abs(c.q_plus(t) * c.q_minus(t) - 1.0) < 1e-12);
  }
}

TEST_CASE("interval: the exterior map is the identity up to scale, cap 1/2, I^L = 0") {
  const auto a = make_interval();
  const auto c = open_arc(a, 256);
  ConformalOptions o;
  o.N = 256;
  const auto m = exterior_map(c, o);
  CHECK(capacity_from_map(m) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(loewner_energy(c, m)) < 1e-10);
  const auto hp = h_prime_at_pm1(c, m);
  CHECK(hp.hp1 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(hp.hm1 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("circular arcs: cap, endpoint derivatives, vanishing Loewner energy") {
  for (double alpha : {M_PI / 3, M_PI / 2, 2 * M_PI / 3}) {
    const auto a = make_circular_arc(alpha);
    const auto c = open_arc(a);
    const auto m = exterior_map(c);
    CHECK(m.residual < 1e-11);
    CHECK(capacity_from_map(m) == doctest::Approx(1 / (2 * std::sin(alpha / 2))).epsilon(1e-9));
    CHECK(std::abs(loewner_energy(c, m)) < 1e-8);
    const auto hp = h_prime_at_pm1(c, m);
    CHECK(std::abs(hp.hp1 - std::sin(alpha / 2)) < 1e-7);
    CHECK(std::abs(hp.hm1 - std::sin(alpha / 2)) < 1e-7);
  }
}

TEST_CASE("boundary correspondence is increasing and the map reproduces the curve") {
  const auto a = make_perturbed_arc({1.0, 0.5, -0.3}, 0.3);
  const auto c = open_arc(a);
  const auto m = exterior_map(c);
  for (std::size_t j = 1; j < m.S.size(); ++j) CHECK(m.S[j] > m.S[j - 1]);
  for (double phi : {0.3, 1.9, 4.4}) CHECK(std::abs(m.sinv(phi + 1e-7) - m.sinv(phi - 1e-7)) > 0);
  CHECK(loewner_energy(c, m) > 0);
}

TEST_CASE("LaurentMap serialization round trip") {
  const auto a = make_circular_arc(1.2);
  const auto c = open_arc(a);
  ConformalOptions o;
  o.N = 512;
  const auto m = exterior_map(c, o);
  const auto r = LaurentMap::from_json(m.to_json(), c);
  CHECK(r.cap_coeff == m.cap_coeff);
  for (double phi : {0.2, 3.0, 5.5}) CHECK(std::abs(r.sinv(phi) - m.sinv(phi)) < 1e-14);
}

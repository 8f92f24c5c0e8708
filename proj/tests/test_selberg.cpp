#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arcgas/quadrature.hpp"
#include "arcgas/selberg.hpp"

using namespace arcgas;

TEST_CASE("Gauss rules integrate polynomials exactly") {
  const Rule gl = gauss_legendre(10);
  double s = 0;
  for (int j = 0; j < gl.size(); ++j) s += gl.w[j] * std::pow(gl.x[j], 8);
  CHECK(s == doctest::Approx(2.0 / 9).epsilon(1e-14));
  // weight (1-x)^{1/2} (1+x)^{-1/2}: mass 2 B(3/2, 1/2) = pi, mean -1/2
  const Rule gj = gauss_jacobi(12, 0.5, -0.5);
  double m0 = 0, m1 = 0;
  for (int j = 0; j < gj.size(); ++j) {
    m0 += gj.w[j];
    m1 += gj.w[j] * gj.x[j];
  }
  CHECK(m0 == doctest::Approx(M_PI).epsilon(1e-13));
  CHECK(m1 == doctest::Approx(-M_PI / 2).epsilon(1e-13));
}

TEST_CASE("small-n partition functions by hand") {
  // n = 1: int_{-1}^{1} dx = 2
  CHECK(logZ_beta2_product(1) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  // n = 2, beta = 2: (1/2) int int (x-y)^2 = 4/3
  CHECK(logZ_beta2_product(2) == doctest::Approx(std::log(4.0 / 3)).epsilon(1e-14));
  // n = 2, beta = 1: (1/2) int int |x-y| = 4/3 as well
  CHECK(brute_logZ_interval(2, 1.0).logZ == doctest::Approx(std::log(4.0 / 3)).epsilon(1e-10));
}

TEST_CASE("product formula equals brute force quadrature") {
  for (int n = 1; n <= 3; ++n) CHECK(std::abs(logZ_beta2_product(n) - brute_logZ_interval(n, 2.0).logZ) < 1e-8);
}

TEST_CASE("calibrated Selberg integral matches brute force at several beta") {
  for (double beta : {0.7, 1.0, 2.0, 4.0})
    for (int n = 1; n <= 3; ++n)
      CHECK(std::abs(logZbar_selberg(n, beta).calibrated - brute_logZ_interval(n, beta).logZ) < 1e-7);
}

TEST_CASE("calibrated Selberg equals the beta = 2 product up to n = 200") {
  for (int n = 1; n <= 200; n += 7)
    CHECK(std::abs(logZbar_selberg(n, 2.0).calibrated - logZ_beta2_product(n)) < 1e-9 * std::max(1.0, double(n) * n));
}

TEST_CASE("printed and calibrated differ by the recorded correction") {
  for (int n : {2, 5, 17}) {
    const auto s = logZbar_selberg(n, 1.3);
    CHECK(s.calibrated == doctest::Approx(s.printed + s.log_correction).epsilon(1e-13));
  }
}

TEST_CASE("zeta'(-1)") { CHECK(zeta_prime_minus1() == doctest::Approx(-0.16542114370045092).epsilon(1e-14)); }

TEST_CASE("asymptotic expansion error decreases like 1/n^2") {
  double prev = 1;
  for (int n : {10, 20, 40, 80}) {
    const double e = std::abs(logZ_beta2_product(n) - logZ_asymptotic(n));
    CHECK(e < prev);
    if (n > 10) CHECK(prev / e == doctest::Approx(4.0).epsilon(0.05));
    prev = e;
  }
}

TEST_CASE("arc brute force: one particle measures the length") {
  CHECK(brute_logZ_arc(make_circular_arc(M_PI / 2), 1, 2.0).logZ == doctest::Approx(std::log(M_PI)).epsilon(1e-12));
  CHECK(brute_logZ_arc(make_interval(), 2, 2.0).logZ == doctest::Approx(std::log(4.0 / 3)).epsilon(1e-10));
}

TEST_CASE("interval means by quadrature") {
  // n = 2, beta = 1: int int (x^2 + y^2)|x - y| / int int |x - y| = 4/5
  CHECK(brute_mean_interval(1, 2.0, [](double x) { return x * x; }) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(brute_mean_interval(2, 1.0, [](double x) { return x * x; }) == doctest::Approx(0.8).epsilon(1e-10));
}

TEST_CASE("route names") {
  CHECK(std::string(to_string(PartitionRoute::Beta2Product)) == "beta2-product");
  CHECK(std::string(to_string(PartitionRoute::BruteForce)) == "brute-force");
}

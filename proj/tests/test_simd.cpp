#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "arcgas/simd.hpp"

using namespace arcgas::simd;

namespace {
std::vector<const Kernels*> variants() {
  std::vector<const Kernels*> v = {&scalar_kernels()};
  if (auto k = avx2_kernels()) v.push_back(k);
  if (auto k = neon_kernels()) v.push_back(k);
  return v;
}

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo = -1, double hi = 1) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}
}  // namespace

TEST_CASE("scalar reference against naive loops") {
  const auto& k = scalar_kernels();
  std::mt19937_64 rng(1);
  for (std::size_t n : {0u, 1u, 3u, 4u, 9u, 100u}) {
    const auto a = random_vec(rng, n), b = random_vec(rng, n);
    double d = 0, lr = 0, lc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      d += a[i] * b[i];
      lr += std::log(std::abs((0.3 - a[i]) / (-0.7 - a[i])));
      lc += std::log(std::abs((std::complex<double>(0.2, 1.5) - std::complex<double>(a[i], b[i])) /
                              (std::complex<double>(-0.1, 1.1) - std::complex<double>(a[i], b[i]))));
    }
    CHECK(k.dot(a.data(), b.data(), n) == doctest::Approx(d).epsilon(1e-13));
    CHECK(k.log_ratio_real(a.data(), n, -0.7, 0.3) == doctest::Approx(lr).epsilon(1e-12));
    CHECK(k.log_ratio_complex(a.data(), b.data(), n, -0.1, 1.1, 0.2, 1.5) == doctest::Approx(lc).epsilon(1e-12));
  }
}

TEST_CASE("vector variants reproduce the scalar reference") {
  const auto& ref = scalar_kernels();
  std::mt19937_64 rng(2);
  for (const Kernels* k : variants()) {
    INFO(to_string(k->isa));
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 17u, 63u, 200u, 201u}) {
      const auto a = random_vec(rng, n), b = random_vec(rng, n), A = random_vec(rng, n * n);
      CHECK(std::abs(k->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) < 1e-13);
      std::vector<double> y1(n), y2(n);
      ref.symv(A.data(), n, a.data(), y1.data());
      k->symv(A.data(), n, a.data(), y2.data());
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-13);
      CHECK(std::abs(k->log_ratio_real(a.data(), n, 0.5, -0.25) - ref.log_ratio_real(a.data(), n, 0.5, -0.25)) < 1e-11);
      CHECK(std::abs(k->log_ratio_complex(a.data(), b.data(), n, 0.1, 1.3, 0.4, 1.2) -
                     ref.log_ratio_complex(a.data(), b.data(), n, 0.1, 1.3, 0.4, 1.2)) < 1e-11);
    }
  }
}

TEST_CASE("long products stay finite through renormalization") {
  std::mt19937_64 rng(3);
  const std::size_t n = 5000;
  const auto x = random_vec(rng, n, 0.0, 1e-3);  // every ratio far from one
  for (const Kernels* k : variants()) {
    const double v = k->log_ratio_real(x.data(), n, 0.5, 200.0);
    double ref = 0;
    for (double xi : x) ref += std::log(std::abs((200.0 - xi) / (0.5 - xi)));
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("hitting a point gives -inf") {
  const std::vector<double> x = {0.1, 0.2, 0.3, 0.4, 0.5};
  for (const Kernels* k : variants()) {
    CHECK(k->log_ratio_real(x.data(), x.size(), 0.0, 0.3) == -INFINITY);
    const std::vector<double> im = {1, 1, 1, 1, 1};
    CHECK(k->log_ratio_complex(x.data(), im.data(), x.size(), 0.0, 0.0, 0.4, 1.0) == -INFINITY);
  }
}

TEST_CASE("dispatch returns a known variant") {
  const auto& k = kernels();
  CHECK((k.isa == Isa::Scalar || k.isa == Isa::Avx2 || k.isa == Isa::Neon));
  CHECK(std::string(to_string(Isa::Avx2)) == "avx2");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "arcgas/errors.hpp"
#include "arcgas/pipeline.hpp"
#include "arcgas/quadrature.hpp"
#include "arcgas/selberg.hpp"

using namespace arcgas;

namespace {
const Analysis& semicircle() {
  static const Analysis a = analyze(make_circular_arc(M_PI / 2));
  return a;
}

std::vector<double> sorted_angles(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, M_PI);
  std::vector<double> th(n);
  for (auto& t : th) t = u(rng);
  std::sort(th.begin(), th.end());
  return th;
}
}  // namespace

TEST_CASE("Gram determinant on the interval reproduces the product formula") {
  for (int n : {1, 2, 5, 16, 40}) {
    const auto g = logZ_beta2_gram(make_interval(), n);
    CHECK(g.logZ == doctest::Approx(logZ_beta2_product(n)).epsilon(1e-10));
    CHECK(g.orthogonality_defect < 1e-8);
  }
}

TEST_CASE("Gram determinant on the semicircle against brute force") {
  const auto arc = make_circular_arc(M_PI / 2);
  CHECK(logZ_beta2_gram(arc, 1).logZ == doctest::Approx(std::log(M_PI)).epsilon(1e-12));
  for (int n : {2, 3}) CHECK(std::abs(logZ_beta2_gram(arc, n).logZ - brute_logZ_arc(arc, n, 2.0).logZ) < 1e-6);
}

TEST_CASE("incremental move equals the recomputed density change, both modes") {
  const GasModel m = semicircle().gas_model(24);
  std::mt19937_64 rng(11);
  for (GasMode mode : {GasMode::Grunsky, GasMode::Pairwise}) {
    GasParams p;
    p.n = 9;
    p.beta = 1.3;
    p.s = 0.6;
    p.mode = mode;
    for (int t = 0; t < 20; ++t) {
      auto th = sorted_angles(rng, p.n);
      const auto st = make_state(m, p, th);
      const int mu = t % p.n;
      const double lo = mu ? th[mu - 1] : 0.0, hi = mu + 1 < p.n ? th[mu + 1] : M_PI;
      const double y = 0.5 * (lo + hi) + 0.2 * (hi - lo) * std::sin(t);
      const double before = log_target(m, p, th);
      const double old = th[mu];
      th[mu] = y;
      CHECK(move_delta(m, p, st, mu, y) == doctest::Approx(log_target(m, p, th) - before).epsilon(1e-11));
      const double step = std::abs(y - old) + 0.1;
      CHECK(detailed_balance_defect(m, p, st, mu, y, step) < 1e-12);
      if (std::abs(y - old) > 1e-3) CHECK(detailed_balance_defect(m, p, st, mu, y, 1e-4) == 0.0);
    }
  }
}

TEST_CASE("moves that break the ordering are rejected") {
  const GasModel m = GasModel::interval(4);
  GasParams p;
  p.n = 3;
  const auto st = make_state(m, p, {0.5, 1.0, 2.0});
  CHECK(move_delta(m, p, st, 0, 1.2) == -INFINITY);
  CHECK(std::isfinite(move_delta(m, p, st, 0, 0.7)));
}

TEST_CASE("truncated Grunsky density approaches the pairwise density") {
  const GasModel m = semicircle().gas_model(64);
  std::mt19937_64 rng(12);
  GasParams g, q;
  g.n = q.n = 8;
  q.mode = GasMode::Pairwise;
  const auto a = sorted_angles(rng, 8), b = sorted_angles(rng, 8);
  const double dg = log_target(m, g, a) - log_target(m, g, b);
  const double dq = log_target(m, q, a) - log_target(m, q, b);
  CHECK(std::abs(dg - dq) < 1e-6);
}

TEST_CASE("reflected proposal is symmetric") {
  for (double x : {0.01, 1.0, 3.1})
    for (double y : {0.02, 0.9, 3.12}) CHECK(proposal_density(x, y, 0.4) == doctest::Approx(proposal_density(y, x, 0.4)));
}

TEST_CASE("cached power sums do not drift") {
  GasParams p;
  p.n = 30;
  p.sweeps = 3000;
  p.burn_in = 300;
  p.checkpoint = 500;
  const auto s = mcmc_run(semicircle().gas_model(16), p);
  CHECK(s.cache_drift < 1e-9);
  CHECK(s.acceptance > 0.1);
  CHECK(s.acceptance < 0.9);
}

TEST_CASE("two particles on the interval match quadrature") {
  GasParams p;
  p.n = 2;
  p.beta = 2;
  p.s = 0;
  p.seed = 3;
  p.sweeps = 200000;
  p.burn_in = 1000;
  p.k_stat = 2;
  const auto s = mcmc_run(GasModel::interval(2), p);
  // X_2 = sum (2 x^2 - 1) against the density (x - y)^2 on [-1, 1]^2, Gauss-Legendre exact here
  const Rule gl = gauss_legendre(8);
  double num = 0, den = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const double w = gl.w[i] * gl.w[j] * (gl.x[i] - gl.x[j]) * (gl.x[i] - gl.x[j]);
      den += w;
      num += w * (2 * gl.x[i] * gl.x[i] - 1 + 2 * gl.x[j] * gl.x[j] - 1);
    }
  const auto& x2 = s.stat("X2");
  CHECK(std::abs(x2.mean - num / den) < 4 * x2.se_mean);
  CHECK(std::abs(s.stat("X1").mean) < 4 * s.stat("X1").se_mean);
}

TEST_CASE("runs are reproducible and chains differ") {
  GasParams p;
  p.n = 20;
  p.sweeps = 800;
  p.burn_in = 100;
  p.seed = 99;
  p.keep_series = true;
  const auto m = semicircle().gas_model(16);
  const auto a = mcmc_run(m, p), b = mcmc_run(m, p);
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.series_csv() == b.series_csv());
  const auto c = mcmc_chains(m, p, 2);
  CHECK(c[0].to_csv() == a.to_csv());
  CHECK(c[1].to_csv() != a.to_csv());
}

TEST_CASE("thermodynamic integration on the interval is exactly zero") {
  GasParams p;
  p.n = 10;
  p.sweeps = 100;
  p.burn_in = 10;
  const auto t = thermo_log_ratio(GasModel::interval(8), p, 4);
  CHECK(t.estimate == 0.0);
  CHECK(t.se == 0.0);
  CHECK(t.csv().rfind("s,weight,", 0) == 0);
}

TEST_CASE("thermodynamic integration on the semicircle, small n") {
  GasParams p;
  p.n = 3;
  p.beta = 2;
  p.seed = 4;
  p.sweeps = 40000;
  p.burn_in = 2000;
  const auto arc = make_circular_arc(M_PI / 2);
  const double exact = logZ_beta2_gram(arc, 3).logZ - logZ_beta2_product(3);
  const auto t = thermo_log_ratio(semicircle().gas_model(64), p, 8);
  CHECK(std::abs(t.estimate - exact) < 4 * t.se + 1e-3);
}

TEST_CASE("parameter validation") {
  GasParams p;
  p.n = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.n = 5;
  p.beta = -1;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.beta = 2;
  p.s = 1.5;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("CLT estimate on the interval") {
  GasParams p;
  p.n = 40;
  p.beta = 2;
  p.seed = 5;
  p.sweeps = 6000;
  p.burn_in = 600;
  p.k_stat = 1;
  ChebSeries u;
  u.coeffs = {1.0};
  const auto e = linear_statistic_clt(GasModel::interval(1), p, u, 4, CltParams{0.25, 0.0});
  CHECK(e.variance == doctest::Approx(0.25).epsilon(0.3));
  CHECK(e.chains == 4);
}

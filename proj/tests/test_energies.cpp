#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arcgas/pipeline.hpp"

using namespace arcgas;

namespace {
const Analysis& semicircle() {
  static const Analysis a = analyze(make_circular_arc(M_PI / 2));
  return a;
}
const Analysis& interval() {
  static const Analysis a = analyze(make_interval());
  return a;
}
const Analysis& perturbed() {
  static const Analysis a = analyze(make_perturbed_arc({1.0, 0.5, -0.3}, 0.3));
  return a;
}
ChebSeries tk(int k, int N) {
  ChebSeries u;
  u.coeffs.assign(N, 0.0);
  u.coeffs[k - 1] = 1;
  return u;
}
}  // namespace

TEST_CASE("J^F bracket") {
  CHECK(jf_coefficient(2.0) == 0.0);
  CHECK(jf_coefficient(4.0) == doctest::Approx(1.0 / 16).epsilon(1e-15));
  CHECK(jf_coefficient(1.0) == doctest::Approx(1.0 / 16).epsilon(1e-15));
  for (double b : {0.3, 0.5, 1.0, 3.0, 8.0}) CHECK(jf_coefficient(b) == jf_coefficient(4.0 / b));
  CHECK(free_energy_prediction(24.0, 16.0, 4.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("interval energies vanish") {
  const auto& e = interval().report;
  CHECK(std::abs(e.JA_spectral) < 1e-8);
  CHECK(std::abs(e.JA_geometric) < 1e-8);
  CHECK(std::abs(e.JF_cheb) < 1e-8);
  CHECK(std::abs(e.JF_dirichlet) < 1e-8);
  CHECK(e.cap == doctest::Approx(0.5).epsilon(1e-12));
  const auto p = predict(e, interval().B, interval().v, 2.0);
  CHECK(std::abs(p.constant) < 1e-9);
}

TEST_CASE("semicircle: J^A = 3 log 2 by both routes; beta = 2 constant log 2 / 8") {
  const auto& a = semicircle();
  CHECK(a.report.JA_spectral == doctest::Approx(3 * std::log(2.0)).epsilon(1e-6));
  CHECK(a.report.JA_geometric == doctest::Approx(3 * std::log(2.0)).epsilon(1e-6));
  const auto p2 = predict(a.report, a.B, a.v, 2.0);
  CHECK(p2.constant == doctest::Approx(std::log(2.0) / 8).epsilon(1e-6));
  const auto p4 = predict(a.report, a.B, a.v, 4.0);
  CHECK(p4.constant == doctest::Approx(a.report.JA_spectral / 24 + a.report.JF_cheb / 16).epsilon(1e-14));
}

TEST_CASE("J^A positive; routes agree on a perturbed arc") {
  const auto& e = perturbed().report;
  CHECK(e.JA_spectral > 0);
  CHECK(std::abs(e.JA_spectral - e.JA_geometric) < 1e-4);
  CHECK(std::abs(e.JF_cheb - e.JF_dirichlet) < 1e-4);
  CHECK(std::abs(e.cap - e.cap_frostman) < 1e-8);
  CHECK(std::abs(e.cap - e.cap_a00) < 1e-8);
  CHECK(e.IL > 0);
}

TEST_CASE("Dirichlet energy of T_k on the interval is k") {
  const auto& a = interval();
  for (int k : {1, 2, 5}) {
    const double D = transported_dirichlet(a.map, a.eq.emap,
                                           [k](const EquilibriumMap::Point& p) { return std::cos(k * p.theta); });
    CHECK(D == doctest::Approx(double(k)).epsilon(1e-8));
  }
}

TEST_CASE("quadratic form equals transported Dirichlet energy") {
  for (const Analysis* a : {&semicircle(), &perturbed()}) {
    const auto u = tk(3, a->B.N);
    const auto g = ScaledVector::from_cheb(u, a->B.N);
    const double D =
        transported_dirichlet(a->map, a->eq.emap, [&](const EquilibriumMap::Point& p) { return u.eval(p.t); });
    CHECK(std::abs(quad_form(a->B, g, g) - D) < 1e-5);
  }
}

TEST_CASE("CLT parameters on the interval") {
  const auto& a = interval();
  const auto p = clt_params(tk(1, a.B.N), a.B, a.v, 2.0);
  CHECK(p.variance == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(p.mean_shift == 0.0);
  // u = x^2 at beta = 1: mean shift -1/4 for the selected boundary term
  ChebSeries x2 = tk(2, a.B.N);
  x2.coeffs[1] = 0.5;
  x2.c0 = 0.5;
  CHECK(clt_params(x2, a.B, a.v, 1.0, MVariant::Intro).mean_shift == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(clt_params(x2, a.B, a.v, 1.0, MVariant::ProofPlusG0).mean_shift != doctest::Approx(-0.25));
}

TEST_CASE("CLT variance is nonnegative and scales like 1/beta") {
  const auto& a = perturbed();
  ChebSeries u;
  u.coeffs.assign(a.B.N, 0.0);
  for (int k = 0; k < 6; ++k) u.coeffs[k] = std::cos(1.3 * k) / (k + 1);
  const double v2 = clt_params(u, a.B, a.v, 2.0).variance;
  CHECK(v2 > 0);
  CHECK(clt_params(u, a.B, a.v, 4.0).variance == doctest::Approx(v2 / 2).epsilon(1e-14));
}

TEST_CASE("report serialization") {
  const auto j = semicircle().report.to_json();
  CHECK(j.contains("JA_spectral"));
  CHECK(j.contains("JF_dirichlet"));
  CHECK(j.at("cap").get<double>() == semicircle().report.cap);
  const auto p = predict(semicircle().report, semicircle().B, semicircle().v, 1.0);
  CHECK(p.to_json().contains("constant"));
}

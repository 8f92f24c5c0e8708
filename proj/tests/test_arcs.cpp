#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arcgas/arcs.hpp"
#include "arcgas/errors.hpp"

using namespace arcgas;

TEST_CASE("endpoints are -1 and 1 for every family") {
  for (const auto& a : {make_interval(), make_circular_arc(0.4), make_circular_arc(M_PI / 2),
                        make_circular_arc(2.9), make_perturbed_arc({1.0, 0.5, -0.3}, 0.3)}) {
    CHECK(std::abs(a.point(-1.0) - cd(-1, 0)) < 1e-14);
    CHECK(std::abs(a.point(1.0) - cd(1, 0)) < 1e-14);
  }
}

TEST_CASE("circular arcs lie on the circle through -1, 1 with center i cot(alpha)") {
  for (double alpha : {0.3, M_PI / 3, M_PI / 2, 2.5}) {
    const auto a = make_circular_arc(alpha);
    const cd c(0, std::cos(alpha) / std::sin(alpha));
    for (int j = 0; j <= 50; ++j) {
      const double t = -1 + j / 25.0;
      CHECK(std::abs(std::abs(a.point(t) - c) - 1 / std::sin(alpha)) < 1e-12);
    }
  }
}

TEST_CASE("semicircle is the upper half of the unit circle") {
  const auto a = make_circular_arc(M_PI / 2);
  CHECK(std::abs(a.point(0.0) - cd(0, 1)) < 1e-14);
  CHECK(std::abs(std::abs(a.tangent(0.3)) - M_PI / 2) < 1e-12);
}

TEST_CASE("tangent and chord agree with finite differences") {
  for (const auto& a : {make_circular_arc(1.1), make_perturbed_arc({1.0, -0.7}, 0.4)}) {
    for (double t : {-0.9, -0.2, 0.0, 0.6}) {
      const double h = 1e-6;
      const cd fd = (a.point(t + h) - a.point(t - h)) / (2 * h);
      CHECK(std::abs(fd - a.tangent(t)) < 1e-7);
      const double s = t + 0.31;
      CHECK(std::abs(a.chord(s, t) - (a.point(s) - a.point(t)) / (s - t)) < 1e-12);
      CHECK(std::abs(a.chord(t, t) - a.tangent(t)) < 1e-10);
    }
  }
}

TEST_CASE("zero amplitude perturbation is the interval") {
  const auto a = make_perturbed_arc({2.0, 1.0}, 0.0);
  for (double t : {-0.7, 0.1, 0.8}) CHECK(std::abs(a.point(t) - cd(t, 0)) < 1e-15);
}

TEST_CASE("homotopy endpoints") {
  const auto a = make_perturbed_arc({1.0}, 0.3);
  CHECK(a.homotopy(0.0).is_interval());
  CHECK(std::abs(a.homotopy(1.0).point(0.2) - a.point(0.2)) < 1e-15);
  const auto c = make_circular_arc(1.0);
  CHECK(std::abs(std::abs(c.homotopy(0.5).point(-1.0)) - 1.0) < 1e-14);
}

TEST_CASE("json round trip keeps the canonical form") {
  for (const auto& a : {make_interval(), make_circular_arc(1.25), make_perturbed_arc({1.0, 0.5}, 0.2)}) {
    const auto b = ArcSpec::from_json(a.to_json());
    CHECK(b.canonical() == a.canonical());
    CHECK(std::abs(b.point(0.37) - a.point(0.37)) == 0.0);
  }
}

TEST_CASE("malformed configs are rejected") {
  CHECK_THROWS_AS(ArcSpec::from_json(nlohmann::json{{"family", "spiral"}}), DomainError);
  CHECK_THROWS_AS(ArcSpec::from_json(nlohmann::json{{"alpha", 1.0}}), DomainError);
  CHECK_THROWS_AS(ArcSpec::from_json(nlohmann::json{{"family", "circular"}, {"alpha", 1.0}, {"frame", "x"}}),
                  DomainError);
}

TEST_CASE("validation reports a healthy polyline") {
  const auto d = validate(make_perturbed_arc({1.0, 0.5, -0.3}, 0.3), 256);
  CHECK(d.ok);
  CHECK_FALSE(d.polyline_self_intersects);
  CHECK(d.endpoint_residual < 1e-14);
  CHECK(d.min_abs_tangent > 0.5);
}

TEST_CASE("unit-circle frame maps the normalized arc onto the unit circle") {
  const auto a = make_circular_arc(M_PI / 3, Frame::UnitCircleArc);
  for (double t : {-1.0, -0.4, 0.5, 1.0}) CHECK(std::abs(std::abs(a.physical_point(t)) - 1.0) < 1e-12);
}

TEST_CASE("circular opening angle must lie in (0, pi)") {
  CHECK_THROWS_AS(make_circular_arc(0.0), DomainError);
  CHECK_THROWS_AS(make_circular_arc(M_PI), DomainError);
  CHECK_THROWS_AS(make_perturbed_arc({1.0}, std::nan("")), DomainError);
}

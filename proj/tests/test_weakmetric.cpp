#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "trm/sampling.hpp"
#include "trm/weakmetric.hpp"

using namespace trm;

namespace {

// Independent oracle for the boundary sup: a dense tan-substituted grid.
double oracle_big_m(const HPoint& z1, const HPoint& z2, int n = 2'000'000) {
  const double pi = std::numbers::pi;
  double best = 1.0;  // the limit value at both ends of the real line
  for (int j = 1; j < n; ++j) {
    const double x = std::tan(-0.5 * pi + pi * j / n);
    const double q = std::norm(z2.z() - x) / std::norm(z1.z() - x);
    best = std::max(best, q);
  }
  return std::sqrt(best);
}

}  // namespace

TEST_CASE("big_m basic values") {
  const HPoint i(0, 1), i2(0, 2);
  CHECK(big_m(i, i) == 1.0);
  // sup of sqrt((4+x^2)/(1+x^2)) is 2 at x = 0
  CHECK(big_m(i, i2) == doctest::Approx(2.0).epsilon(1e-10));
  // descending: the ratio stays below 1, the sup is the limit value 1
  CHECK(big_m(i2, i) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(big_m(i2, i) == doctest::Approx(oracle_big_m(i2, i)).epsilon(1e-7));
}

TEST_CASE("big_m agrees with the dense-grid oracle") {
  Rng rng(41);
  for (int k = 0; k < 10; ++k) {
    const HPoint a = sample_point(rng), b = sample_point(rng);
    CHECK(big_m(a, b) == doctest::Approx(oracle_big_m(a, b)).epsilon(1e-7));
  }
}

TEST_CASE("delta_closed hand values") {
  const HPoint i(0, 1), i2(0, 2), oi(1, 1);
  CHECK(delta_closed(i, i2) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(delta_closed(i2, i) == 0.0);
  CHECK(delta_closed(i, oi) ==
        doctest::Approx(std::log((std::sqrt(5.0) + 1) / 2)).epsilon(1e-14));
}

TEST_CASE("log big_m equals delta_closed") {
  Rng rng(43);
  for (int k = 0; k < 500; ++k) {
    const HPoint a = sample_point(rng), b = sample_point(rng);
    CHECK(std::abs(std::log(big_m(a, b)) - delta_closed(a, b)) <= 1e-7);
  }
}

TEST_CASE("delta_t family") {
  const HPoint i(0, 1), i2(0, 2);
  CHECK_THROWS_AS(WeightParam(-0.1), std::domain_error);
  CHECK_THROWS_AS(WeightParam(1.5), std::domain_error);
  CHECK(delta_t(i, i2, 0.0) == doctest::Approx(0.5 * std::log(2.0)));
  Rng rng(47);
  for (int k = 0; k < 1000; ++k) {
    const HPoint a = sample_point(rng), b = sample_point(rng);
    CHECK(delta_t(a, b, 0.0) == hyp_dist(a, b));
    CHECK(std::abs(delta_t(a, b, 1.0) - delta_closed(a, b)) <= 1e-9);
    CHECK(delta_t(a, b, 0.5) >= -1e-12);
  }
  // descending verticals are free at t = 1
  for (int k = 0; k < 100; ++k) {
    const double re = rng.uniform(-3, 3);
    double y1 = rng.log_uniform(0.05, 5), y2 = rng.log_uniform(0.05, 5);
    if (y1 < y2) std::swap(y1, y2);
    CHECK(std::abs(delta_t(HPoint(re, y1), HPoint(re, y2), 1.0)) <= 1e-12);
  }
}

TEST_CASE("finsler_norm values") {
  const HPoint i(0, 1);
  CHECK(finsler_norm({i, cplx(0, 1)}, 1.0) == doctest::Approx(1.0));
  CHECK(finsler_norm({i, cplx(0, -1)}, 1.0) == 0.0);
  CHECK(finsler_norm({i, cplx(1, 0)}, 0.3) == doctest::Approx(0.5));
  CHECK(finsler_norm({i, cplx(1, 0)}, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("path machinery") {
  SUBCASE("validation") {
    CHECK_THROWS_AS(
        PathSample::make({0.0}, [](double) { return HPoint(0, 1); }),
        std::invalid_argument);
    CHECK_THROWS_AS(
        PathSample::make({0.0, 0.0}, [](double) { return HPoint(0, 1); }),
        std::invalid_argument);
  }
  SUBCASE("vertical segment, hand value") {
    // z(s) = i(1+s): hyperbolic part (1/2)log 2, 1-form part (1/2)log 2
    auto p = PathSample::make(
        {0.0, 0.5, 1.0}, [](double s) { return HPoint(0, 1 + s); },
        [](double) { return cplx(0, 1); });
    CHECK(path_length(p, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(hyperbolic_length(p) ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("closed loop: the 1-form contributes nothing") {
    const double pi = std::numbers::pi;
    auto loop = PathSample::make(
        {0.0, 0.25, 0.5, 0.75, 1.0},
        [pi](double s) {
          return HPoint(0.3 * std::cos(2 * pi * s),
                        2.0 + 0.5 * std::sin(2 * pi * s));
        },
        [pi](double s) {
          return cplx(-0.6 * pi * std::sin(2 * pi * s),
                      pi * std::cos(2 * pi * s));
        });
    CHECK(std::abs(path_length(loop, 1.0) - hyperbolic_length(loop)) <= 1e-9);
  }
  SUBCASE("geodesic path length equals the closed form") {
    const HPoint a(0, 1), b(1, 1);
    const Geodesic g(a, b);
    CHECK(path_length(geodesic_path(g), 1.0) ==
          doctest::Approx(delta_closed(a, b)).epsilon(1e-8));
  }
  SUBCASE("finite-difference velocity fallback") {
    auto p = PathSample::make({0.0, 0.5, 1.0},
                              [](double s) { return HPoint(s, 1 + s * s); });
    CHECK_FALSE(p.has_analytic_velocity());
    CHECK(p.velocity(0.5).real() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(p.velocity(0.5).imag() == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("geodesic minimality probe") {
  const HPoint a(0, 1), b(0, 4);
  SUBCASE("unperturbed geodesic has margin ~ 0") {
    const MinimalityReport r = geodesic_minimality_probe(a, b, 1.0, 0, 1);
    CHECK(r.base_margin <= 1e-9);
  }
  SUBCASE("50 random bumps all lengthen the path") {
    const MinimalityReport r = geodesic_minimality_probe(a, b, 1.0, 50, 2);
    CHECK(r.all_positive);
    CHECK(r.min_margin > 0.0);
  }
  SUBCASE("margins shrink with the amplitude") {
    const double m1 =
        geodesic_minimality_probe(a, b, 1.0, 10, 3, 0.2).max_margin;
    const double m2 =
        geodesic_minimality_probe(a, b, 1.0, 10, 3, 0.1).max_margin;
    const double m3 =
        geodesic_minimality_probe(a, b, 1.0, 10, 3, 0.05).max_margin;
    CHECK(m2 < m1);
    CHECK(m3 < m2);
    CHECK(m3 < 0.01);
  }
}

TEST_CASE("symmetrization and weak axioms") {
  const HPoint i(0, 1), i2(0, 2);
  // (log 2 + 0)/2 = hyp_dist(i, 2i)
  const double sym = 0.5 * (delta_t(i, i2, 1.0) + delta_t(i2, i, 1.0));
  CHECK(sym == doctest::Approx(hyp_dist(i, i2)).epsilon(1e-15));
  CHECK(symmetrization_check(1000, 7, 0.5).pass);
  CHECK(symmetrization_check(1000, 7, 0.0).max_deviation == 0.0);
  for (double t : {0.0, 0.5, 1.0}) CHECK(weak_axioms_check(1000, 9, t).pass);
}

#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"
#include "trm/halfplane.hpp"
#include "trm/sampling.hpp"

using namespace trm;

namespace {

// Independent oracle: half the acosh form of the Poincare distance.
double oracle_dist(const HPoint& p, const HPoint& q) {
  const double d2 = std::norm(p.z() - q.z());
  return 0.5 * std::acosh(1.0 + d2 / (2.0 * p.im() * q.im()));
}

// Independent oracle: Simpson quadrature of the norm along a geodesic.
double oracle_length(const Geodesic& g, int n = 4096) {
  const double h = g.length() / n;
  auto f = [&](double s) {
    return std::abs(g.velocity(s)) / (2.0 * g.at(s).im());
  };
  double acc = f(0) + f(g.length());
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("HPoint rejects the lower half-plane") {
  CHECK_THROWS_AS(HPoint(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(HPoint(1.0, -2.0), std::domain_error);
  CHECK_THROWS_AS(HPoint(std::nan(""), 1.0), std::domain_error);
  const HPoint p(1.0, 2.0);
  CHECK(p.re() == 1.0);
  CHECK(p.im() == 2.0);
}

TEST_CASE("hyp_norm values") {
  CHECK(hyp_norm({HPoint(0, 1), cplx(0, 1)}) == doctest::Approx(0.5));
  CHECK(hyp_norm({HPoint(0, 2), cplx(0, 0)}) == 0.0);
  // |3+4i| / (2*2) = 5/4
  CHECK(hyp_norm({HPoint(1, 2), cplx(3, 4)}) == doctest::Approx(1.25));
}

TEST_CASE("hyp_dist values and properties") {
  const HPoint i(0, 1);
  CHECK(hyp_dist(i, i) == 0.0);
  CHECK(hyp_dist(i, HPoint(0, 4)) == doctest::Approx(std::log(2.0)));
  // the golden-ratio pair
  CHECK(hyp_dist(i, HPoint(1, 1)) ==
        doctest::Approx(std::log((std::sqrt(5.0) + 1) / 2)).epsilon(1e-14));
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const HPoint p = sample_point(rng), q = sample_point(rng),
                 r = sample_point(rng);
    CHECK(hyp_dist(p, q) == doctest::Approx(oracle_dist(p, q)).epsilon(1e-11));
    CHECK(std::abs(hyp_dist(p, q) - hyp_dist(q, p)) <= 1e-12);
    CHECK(hyp_dist(p, r) <= hyp_dist(p, q) + hyp_dist(q, r) + 1e-12);
  }
}

TEST_CASE("geodesic segments") {
  const HPoint i(0, 1);
  SUBCASE("vertical segment") {
    const Geodesic g(i, HPoint(0, 4));
    CHECK(g.is_vertical());
    CHECK(g.length() == doctest::Approx(std::log(2.0)));
    const HPoint end = g.at(std::log(2.0));
    CHECK(end.re() == doctest::Approx(0.0));
    CHECK(end.im() == doctest::Approx(4.0).epsilon(1e-14));
  }
  SUBCASE("semicircle through i and 1+i") {
    const Geodesic g(i, HPoint(1, 1));
    CHECK_FALSE(g.is_vertical());
    CHECK(0.5 * (g.foot_low() + g.foot_high()) == doctest::Approx(0.5));
    CHECK(0.5 * (g.foot_high() - g.foot_low()) ==
          doctest::Approx(std::sqrt(1.25)));
    // the arc midpoint is the top of the circle: maximal Im
    const double mid = g.at(g.length() / 2).im();
    for (int j = 0; j <= 16; ++j)
      CHECK(g.at(g.length() * j / 16).im() <= mid + 1e-12);
  }
  SUBCASE("degenerate endpoints are rejected") {
    CHECK_THROWS_AS(Geodesic(i, i), std::domain_error);
  }
  SUBCASE("endpoints reproduced and unit speed, 100 random pairs") {
    Rng rng(5);
    for (int k = 0; k < 100; ++k) {
      const HPoint p = sample_point(rng), q = sample_point(rng);
      if (p == q) continue;
      const Geodesic g(p, q);
      CHECK(std::abs(g.at(0).z() - p.z()) <= 1e-12);
      CHECK(std::abs(g.at(g.length()).z() - q.z()) <= 1e-12);
      CHECK(g.length() == doctest::Approx(hyp_dist(p, q)).epsilon(1e-12));
      for (int j = 0; j <= 4; ++j) {
        const double s = g.length() * j / 4;
        CHECK(hyp_norm({g.at(s), g.velocity(s)}) ==
              doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
  SUBCASE("length matches independent quadrature") {
    const Geodesic g(i, HPoint(1, 1));
    CHECK(oracle_length(g) == doctest::Approx(g.length()).epsilon(1e-9));
  }
}

TEST_CASE("geodesic rays") {
  const HPoint i(0, 1);
  SUBCASE("to infinity: exponential ascent") {
    const GeodesicRay r(i, BoundaryPoint::infinity());
    CHECK(r.at(1.0).im() == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    CHECK(r.at(1.0).re() == doctest::Approx(0.0));
  }
  SUBCASE("to 0: exponential descent") {
    const GeodesicRay r(i, BoundaryPoint::at(0.0));
    CHECK(r.at(1.0).im() == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  }
  SUBCASE("to 1: semicircle approach") {
    const GeodesicRay r(i, BoundaryPoint::at(1.0));
    double prev = 1.0;
    for (int j = 1; j <= 8; ++j) {
      const HPoint p = r.at(1.0 * j);
      CHECK(p.im() < prev);
      prev = p.im();
    }
    CHECK(std::abs(r.at(18.0).z() - cplx(1.0, 0.0)) < 1e-9);
    for (int j = 0; j <= 6; ++j) {
      const double t = 3.0 * j;
      CHECK(hyp_norm({r.at(t), r.velocity(t)}) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("Moebius maps") {
  const HPoint i(0, 1);
  SUBCASE("identity and normalization") {
    const Moebius id = Moebius::identity();
    const Moebius scaled(2, 0, 0, 2);
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
      const HPoint p = sample_point(rng);
      CHECK(mobius_apply(id, p) == p);
      CHECK(std::abs(mobius_apply(scaled, p).z() - p.z()) <= 1e-15);
    }
  }
  SUBCASE("inversion fixes i") {
    const Moebius inv(0, -1, 1, 0);
    CHECK(std::abs(mobius_apply(inv, i).z() - cplx(0, 1)) <= 1e-15);
  }
  SUBCASE("invalid determinant") {
    CHECK_THROWS_AS(Moebius(1, 0, 0, -1), std::domain_error);
    CHECK_THROWS_AS(Moebius(1, 2, 2, 4), std::domain_error);
  }
  SUBCASE("distance invariance and the Im transformation rule") {
    Rng rng(17);
    for (int k = 0; k < 100; ++k) {
      double a, b, c, d;
      do {
        a = rng.uniform(-2, 2);
        b = rng.uniform(-2, 2);
        c = rng.uniform(-2, 2);
        d = rng.uniform(-2, 2);
      } while (a * d - b * c <= 0.2);
      const Moebius m(a, b, c, d);
      const HPoint p = sample_point(rng), q = sample_point(rng);
      CHECK(std::abs(hyp_dist(mobius_apply(m, p), mobius_apply(m, q)) -
                     hyp_dist(p, q)) <= 1e-12);
      const double denom = std::norm(m.c() * p.z() + m.d());
      CHECK(mobius_apply(m, p).im() ==
            doctest::Approx(p.im() / denom).epsilon(1e-13));
    }
  }
  SUBCASE("composition and inverse") {
    Rng rng(23);
    const Moebius m(1.5, 0.3, -0.2, 1.0);
    const Moebius n(0.8, -1.0, 0.5, 2.0);
    const HPoint p = sample_point(rng);
    const HPoint lhs = mobius_apply(m * n, p);
    const HPoint rhs = mobius_apply(m, mobius_apply(n, p));
    CHECK(std::abs(lhs.z() - rhs.z()) <= 1e-13);
    CHECK(std::abs(mobius_apply(m.inverse(), mobius_apply(m, p)).z() - p.z()) <=
          1e-13);
  }
}

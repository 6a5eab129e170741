#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "trm/modelspace.hpp"

using namespace trm;

namespace {

// Brute-force oracle for the dual norm: dense random directions on the
// coefficient sphere, then cyclic golden refinement of each real coordinate.
double oracle_dual_norm(const ModelSpace& s, const ModelBeltrami& mu,
                        int nsamples, std::uint64_t seed) {
  const int dims = 2 * s.dim();
  // test-side arithmetic: pairing constants once, direct L1 loop per sample
  std::vector<cplx> pc(s.dim());
  for (int j = 0; j < s.dim(); ++j) {
    cplx acc(0, 0);
    for (int c = 0; c < s.cells(); ++c)
      acc += s.weight(c) * mu.values[c] * s.basis_values(j)[c];
    pc[j] = acc;
  }
  auto eval = [&](const std::vector<double>& u) {
    cplx num(0, 0);
    for (int j = 0; j < s.dim(); ++j)
      num += cplx(u[2 * j], u[2 * j + 1]) * pc[j];
    double l1 = 0;
    for (int c = 0; c < s.cells(); ++c) {
      cplx phi(0, 0);
      for (int j = 0; j < s.dim(); ++j)
        phi += cplx(u[2 * j], u[2 * j + 1]) * s.basis_values(j)[c];
      l1 += s.weight(c) * std::abs(phi);
    }
    return l1 > 0 ? num.real() / l1 : 0.0;
  };
  Rng rng(seed);
  std::vector<double> best_u(dims, 0.0);
  best_u[0] = 1.0;
  double best = eval(best_u);
  for (int k = 0; k < nsamples; ++k) {
    std::vector<double> u(dims);
    for (auto& x : u) x = rng.uniform(-1, 1);
    const double v = eval(u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  constexpr double inv_phi = 0.6180339887498949;
  double radius = 0.5;
  for (int pass = 0; pass < 9; ++pass) {
    for (int i = 0; i < dims; ++i) {
      double a = best_u[i] - radius, b = best_u[i] + radius;
      double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
      auto at = [&](double x) {
        std::vector<double> u = best_u;
        u[i] = x;
        return eval(u);
      };
      double fc = at(c), fd = at(d);
      while (b - a > 1e-8) {
        if (fc > fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - inv_phi * (b - a);
          fc = at(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + inv_phi * (b - a);
          fd = at(d);
        }
      }
      best_u[i] = fc > fd ? c : d;
      best = std::max(best, eval(best_u));
    }
    radius *= 0.35;
  }
  return best;
}

}  // namespace

TEST_CASE("basis parsing and evaluation") {
  const BasisTerm one = BasisTerm::parse("one");
  CHECK(one.eval(0.3, 0.9) == cplx(1, 0));
  const BasisTerm p = BasisTerm::parse("poly 1 0.5 0 phase 1 0");
  const cplx v = p.eval(0.5, 0.0);
  CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v.imag() == doctest::Approx(1.25));  // (1 + 0.25) e^{i pi/2}
  CHECK_THROWS_AS(BasisTerm::parse("junk 1"), std::invalid_argument);
  CHECK_THROWS_AS(BasisTerm::parse("poly 1"), std::invalid_argument);
  CHECK_THROWS_AS(BasisTerm::parse(""), std::invalid_argument);
}

TEST_CASE("model space construction") {
  const ModelSpace k1 = ModelSpace::default_k1();
  CHECK(k1.dim() == 1);
  CHECK(k1.cells() == 64 * 64);
  double total = 0;
  for (int c = 0; c < k1.cells(); ++c) total += k1.weight(c);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(k1.gram_condition() == doctest::Approx(1.0).epsilon(1e-9));
  const ModelSpace k2 = ModelSpace::default_k2();
  CHECK(k2.dim() == 2);
  CHECK(k2.gram_condition() < 100.0);
  // dependent basis rejected
  CHECK_THROWS_AS(ModelSpace(8, 8,
                             {BasisTerm::parse("poly 1 0 0"),
                              BasisTerm::parse("poly 1 0 0")}),
                  std::domain_error);
}

TEST_CASE("l1 norm") {
  const ModelSpace k1 = ModelSpace::default_k1();
  ModelQD zero;
  zero.coeffs = {cplx(0, 0)};
  CHECK(l1_norm(k1, zero) == 0.0);
  ModelQD q;
  q.coeffs = {cplx(1, 0)};
  CHECK(l1_norm(k1, q) == doctest::Approx(1.0).epsilon(1e-12));
  ModelQD scaled;
  scaled.coeffs = {cplx(-3, 4)};
  CHECK(l1_norm(k1, scaled) == doctest::Approx(5.0).epsilon(1e-12));

  const ModelSpace k2 = ModelSpace::default_k2();
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const ModelQD a = random_qd(k2, rng), b = random_qd(k2, rng);
    ModelQD sum;
    sum.coeffs = {a.coeffs[0] + b.coeffs[0], a.coeffs[1] + b.coeffs[1]};
    CHECK(l1_norm(k2, sum) <= l1_norm(k2, a) + l1_norm(k2, b) + 1e-12);
  }
}

TEST_CASE("pairing") {
  const ModelSpace k2 = ModelSpace::default_k2();
  Rng rng(2);
  ModelBeltrami zero;
  zero.values.assign(k2.cells(), cplx(0, 0));
  const ModelQD phi = random_qd(k2, rng);
  CHECK(std::abs(pairing(k2, zero, phi)) == 0.0);
  SUBCASE("aligned equality case") {
    for (int k = 0; k < 20; ++k) {
      const ModelQD f = random_qd(k2, rng);
      const ModelBeltrami mu = teichmuller_beltrami(k2, f, 1.0);
      CHECK(pairing(k2, mu, f).real() ==
            doctest::Approx(l1_norm(k2, f)).epsilon(1e-12));
    }
  }
  SUBCASE("Hoelder bound") {
    for (int k = 0; k < 200; ++k) {
      const ModelQD f = random_qd(k2, rng);
      const ModelBeltrami mu = random_beltrami(k2, rng);
      CHECK(std::abs(pairing(k2, mu, f)) <=
            linf_norm(mu) * l1_norm(k2, f) + 1e-12);
    }
  }
  SUBCASE("dimension mismatch") {
    ModelBeltrami bad;
    bad.values.assign(5, cplx(0, 0));
    CHECK_THROWS_AS(pairing(k2, bad, phi), std::invalid_argument);
  }
}

TEST_CASE("dual norm, one-dimensional analytic cases") {
  const ModelSpace k1 = ModelSpace::default_k1();
  ModelQD q;
  q.coeffs = {cplx(1, 0)};
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const ModelBeltrami mu = random_beltrami(k1, rng);
    const double expect = std::abs(pairing(k1, mu, q));
    const DualNormResult r = teich_dual_norm(k1, mu);
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-10));
    CHECK(l1_norm(k1, r.maximizer) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(pairing(k1, mu, r.maximizer).real() ==
          doctest::Approx(r.value).epsilon(1e-8));
  }
  // Hoelder equality: mu = c conj(q)/|q|
  const ModelBeltrami mu = teichmuller_beltrami(k1, q, 0.7);
  CHECK(teich_dual_norm(k1, mu).value == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(teich_dual_norm(k1, mu).value <= linf_norm(mu) + 1e-12);
}

TEST_CASE("dual norm vs brute-force oracle, k = 2") {
  const ModelSpace k2 = ModelSpace::default_k2();
  Rng rng(4);
  for (int k = 0; k < 2; ++k) {
    const ModelBeltrami mu = random_beltrami(k2, rng);
    const double solver = teich_dual_norm(k2, mu).value;
    const double oracle = oracle_dual_norm(k2, mu, 40000, 1000 + k);
    CHECK(solver == doctest::Approx(oracle).epsilon(1e-5));
    CHECK(solver <= linf_norm(mu) + 1e-12);
  }
}

TEST_CASE("kernel elements") {
  const ModelSpace k2 = ModelSpace::default_k2();
  const ModelBeltrami nu = kernel_element(k2, 42);
  CHECK(linf_norm(nu) == doctest::Approx(1.0).epsilon(1e-12));
  for (int j = 0; j < k2.dim(); ++j) {
    ModelQD ej;
    ej.coeffs.assign(k2.dim(), cplx(0, 0));
    ej.coeffs[j] = 1.0;
    CHECK(std::abs(pairing(k2, nu, ej)) <= 1e-12);
  }
  Rng rng(5);
  const ModelBeltrami mu = random_beltrami(k2, rng);
  ModelBeltrami shifted = mu;
  for (int c = 0; c < k2.cells(); ++c) shifted.values[c] += nu.values[c];
  CHECK(std::abs(teich_dual_norm(k2, shifted).value -
                 teich_dual_norm(k2, mu).value) <= 1e-8);
  // a 2x2 grid cannot out-dimension a 2-element basis... use k = 1 on 1 cell
  const ModelSpace tiny(1, 1, {BasisTerm::parse("one")});
  CHECK_THROWS_AS(kernel_element(tiny, 1), std::domain_error);
}

TEST_CASE("derivative of the dual norm") {
  const ModelSpace k1 = ModelSpace::default_k1();
  const ModelSpace k2 = ModelSpace::default_k2();
  ModelQD q;
  q.coeffs = {cplx(1, 0)};
  SUBCASE("along the base direction the derivative is beta") {
    const ModelBeltrami self = teichmuller_beltrami(k1, q, 0.8);
    const DerivativeReport r = derivative_check(k1, q, 0.8, self);
    CHECK(r.analytic == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(r.rel_error <= 1e-6);
    CHECK(r.base_norm == doctest::Approx(0.8).epsilon(1e-9));
  }
  SUBCASE("kernel directions have derivative zero") {
    const DerivativeReport r =
        derivative_check(k1, q, 0.8, kernel_element(k1, 7));
    CHECK(std::abs(r.analytic) <= 1e-12);
    CHECK(r.abs_error <= 1e-6);
  }
  SUBCASE("k = 2 random instance against finite differences") {
    Rng rng(6);
    const ModelQD v0 = random_qd(k2, rng);
    const ModelBeltrami v = random_beltrami(k2, rng);
    const DerivativeReport r = derivative_check(k2, v0, 1.3, v);
    CHECK(r.rel_error <= 1e-4);
  }
  SUBCASE("invalid arguments") {
    ModelQD zero;
    zero.coeffs = {cplx(0, 0)};
    Rng rng(1);
    const ModelBeltrami v = random_beltrami(k1, rng);
    CHECK_THROWS_AS(derivative_check(k1, zero, 1.0, v), std::domain_error);
    CHECK_THROWS_AS(derivative_check(k1, q, -1.0, v), std::domain_error);
  }
}

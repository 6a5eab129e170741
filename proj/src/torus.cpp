#include "trm/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace trm {

FoliationVec::FoliationVec(double a_in, double b_in) : a(a_in), b(b_in) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::domain_error("FoliationVec: coordinates must be finite");
  if (a == 0.0 && b == 0.0)
    throw std::domain_error("FoliationVec: (0, 0) is not a foliation");
  if (a < 0.0 || (a == 0.0 && b < 0.0)) {
    a = -a;
    b = -b;
  }
}

double intersection(const FoliationVec& f, const FoliationVec& g) {
  return std::abs(f.a * g.b - f.b * g.a);
}

double extremal_length(const HPoint& tau, const FoliationVec& f) {
  return std::norm(f.a + f.b * tau.z()) / tau.im();
}

BoundaryPoint boundary_point(const FoliationVec& f) {
  if (f.b == 0.0) return BoundaryPoint::infinity();
  return BoundaryPoint::at(-f.a / f.b);
}

double omega_form(const HPoint& tau, cplx v, const FoliationVec& f) {
  const cplx w = f.b * v / (f.a + f.b * tau.z());
  return -w.real() + 0.5 * v.imag() / tau.im();
}

double delta_omega(const HPoint& tau1, const HPoint& tau2,
                   const FoliationVec& f, WeightParam t) {
  const double l1 = std::log(extremal_length(tau1, f));
  const double l2 = std::log(extremal_length(tau2, f));
  return hyp_dist(tau1, tau2) + 0.5 * t.t * (l1 - l2);
}

Moebius disc_chart(const FoliationVec& f) {
  const double n = f.a * f.a + f.b * f.b;
  return Moebius(f.a / n, -f.b / n, f.b, f.a);
}

double log_extremal_length_on_ray(const GeodesicRay& ray, double t,
                                  const FoliationVec& f, bool parallel) {
  const double a = f.a, b = f.b;
  if (ray.is_vertical()) {
    // z = x0 + iY, Y = e^{2 arc}: Ext = ((a + b x0)^2 + b^2 Y^2) / Y
    const double log_y = 2.0 * ray.arc_coordinate(t);
    if (parallel)  // one of the two numerator terms vanishes identically
      return ray.toward_high_foot() ? 2.0 * std::log(std::abs(a)) - log_y
                                    : 2.0 * std::log(std::abs(b)) + log_y;
    const double head = a + b * ray.vertical_x();
    const double y = std::exp(log_y);
    return std::log(head * head + b * b * y * y) - log_y;
  }
  // circular arc with feet u < v, y = e^{2 arc}:
  // |a + b z|^2 (1+y^2)^2 = (A + B y^2)^2 + b^2 (v-u)^2 y^2,
  // Im z (1+y^2) = (v-u) y,  with A = a + b u, B = a + b v.
  const double u = ray.foot_low(), v = ray.foot_high();
  double big_a = a + b * u, big_b = a + b * v;
  if (parallel) (ray.toward_high_foot() ? big_b : big_a) = 0.0;
  const double c = b * (v - u);
  const double arc = ray.arc_coordinate(t);
  const double y = std::exp(2.0 * arc);
  double log_num;
  if (y <= 1.0) {
    const double h = big_a + big_b * y * y;
    log_num = std::log(h * h + c * c * y * y);
  } else {
    // factor y^2 out to avoid overflow for long rays: log(y^4) = 8 arc
    const double iy = 1.0 / y;
    const double h = big_a * iy * iy + big_b;
    log_num = 8.0 * arc + std::log(h * h + c * c * iy * iy);
  }
  return log_num - std::log1p(y * y) - std::log((v - u) * y);
}

IsometryReport isometry_check(const FoliationVec& f, WeightParam t, int pairs,
                              std::uint64_t seed, const Tolerances& tol) {
  const Moebius m = disc_chart(f);
  Rng rng(seed);
  IsometryReport rep;
  rep.pairs = pairs;
  for (int i = 0; i < pairs; ++i) {
    const HPoint x = sample_point(rng), y = sample_point(rng);
    const double lhs = delta_omega(x, y, f, t);
    const double rhs = delta_t(mobius_apply(m, x), mobius_apply(m, y), t);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs - rhs));
  }
  rep.pass = rep.max_deviation <= tol.tol_isometry;
  return rep;
}

RayReport ray_profile(const HPoint& x, const FoliationVec& g,
                      const FoliationVec& f, double t_max, int samples,
                      const Tolerances& tol) {
  if (!(t_max > 0.0)) throw std::domain_error("ray_profile: t_max must be > 0");
  if (samples < 2) throw std::domain_error("ray_profile: need samples >= 2");

  const GeodesicRay ray = geodesic_ray(x, boundary_point(g));
  const bool parallel = intersection(f, g) == 0.0;
  const double log_ext_x = std::log(extremal_length(x, f));
  RayReport rep;
  rep.t_grid.resize(samples);
  rep.delta_values.resize(samples);
  rep.decay_values.resize(samples);
  for (int k = 0; k < samples; ++k) {
    const double t = t_max * static_cast<double>(k) / (samples - 1);
    rep.t_grid[k] = t;
    // delta_omega(x, ray(t), f, 1), with log Ext taken through the ray's
    // arc form: the direct point formula loses all precision near the
    // boundary (see log_extremal_length_on_ray)
    rep.delta_values[k] =
        hyp_dist(x, ray.at(t)) +
        0.5 * (log_ext_x - log_extremal_length_on_ray(ray, t, f, parallel));
    rep.decay_values[k] = std::exp(-rep.delta_values[k]);
  }

  for (int k = 1; k < samples; ++k)
    rep.monotonicity_violation =
        std::max(rep.monotonicity_violation,
                 rep.decay_values[k] - rep.decay_values[k - 1]);
  if (rep.monotonicity_violation > tol.tol_decay_monotone)
    throw std::logic_error("ray_profile: decay failed to be non-increasing");

  // tail diagnostics over the last half of the grid
  const int lo = samples / 2;
  const int n = samples - lo;
  double sum_t = 0, sum_d = 0, sum_tt = 0, sum_td = 0;
  double dmin = rep.delta_values[lo], dmax = rep.delta_values[lo];
  for (int k = lo; k < samples; ++k) {
    const double tt = rep.t_grid[k], dd = rep.delta_values[k];
    sum_t += tt;
    sum_d += dd;
    sum_tt += tt * tt;
    sum_td += tt * dd;
    dmin = std::min(dmin, dd);
    dmax = std::max(dmax, dd);
  }
  const double denom = n * sum_tt - sum_t * sum_t;
  rep.tail_slope = (denom != 0.0) ? (n * sum_td - sum_t * sum_d) / denom : 0.0;
  rep.tail_oscillation = dmax - dmin;
  if (rep.tail_slope > tol.ray_divergent_slope)
    rep.verdict = RayVerdict::Divergent;
  else if (rep.tail_oscillation < tol.ray_bounded_osc)
    rep.verdict = RayVerdict::Bounded;
  else
    rep.verdict = RayVerdict::Divergent;

  rep.walsh_value = intersection(g, f) / std::sqrt(extremal_length(x, g));

  // Aitken extrapolation of the decay tail, rescaled by sqrt(Ext_x(F)).
  const double scale = std::sqrt(extremal_length(x, f));
  const int s = samples;
  if (s >= 3) {
    const double d1 = rep.decay_values[s - 3], d2 = rep.decay_values[s - 2],
                 d3 = rep.decay_values[s - 1];
    const double den = (d3 - d2) - (d2 - d1);
    if (std::abs(den) > 1e-13)
      rep.limit_estimate = (d3 - (d3 - d2) * (d3 - d2) / den) * scale;
    else
      rep.limit_estimate = d3 * scale;
  } else {
    rep.limit_estimate = rep.decay_values[s - 1] * scale;
  }
  return rep;
}

GardinerReport gardiner_check(const HPoint& tau, const FoliationVec& f, cplx v,
                              const Tolerances& tol) {
  if (v == cplx(0.0, 0.0))
    throw std::domain_error("gardiner_check: direction must be nonzero");
  GardinerReport rep;
  const double ext = extremal_length(tau, f);
  const cplx w = f.b * v / (f.a + f.b * tau.z());
  rep.analytic = ext * (2.0 * w.real() - v.imag() / tau.im());

  bool first = true;
  for (double h : tol.fd_steps) {
    if (tau.im() - h * std::abs(v) <= 0.0) continue;  // stay inside H
    const HPoint p(tau.z() + h * v), m(tau.z() - h * v);
    const double fd =
        (extremal_length(p, f) - extremal_length(m, f)) / (2.0 * h);
    const double err = std::abs(fd - rep.analytic);
    if (first || err < rep.abs_error) {
      rep.abs_error = err;
      rep.best_fd = fd;
      rep.best_step = h;
      first = false;
    }
  }
  if (first) throw std::domain_error("gardiner_check: no admissible FD step");
  rep.rel_error = rep.analytic != 0.0
                      ? rep.abs_error / std::abs(rep.analytic)
                      : (rep.abs_error == 0.0
                             ? 0.0
                             : std::numeric_limits<double>::infinity());
  return rep;
}

std::vector<HPoint> incompleteness_witness(const HPoint& x,
                                           const FoliationVec& f, int count) {
  if (count < 2) throw std::domain_error("incompleteness_witness: count < 2");
  // A companion foliation with a real boundary point and i(F, G) != 0: the
  // ray toward it has Im -> 0 while the delta-omega tail collapses.
  const FoliationVec g = (f.a != 0.0) ? FoliationVec(0, 1) : FoliationVec(1, 1);
  const GeodesicRay ray = geodesic_ray(x, boundary_point(g));
  // Start past the apex of the supporting circle so Im is strictly
  // decreasing along the emitted sequence.
  double start = 0.0;
  while (start < 64.0 && ray.at(start + 1.0).im() >= ray.at(start).im())
    start += 1.0;
  std::vector<HPoint> pts;
  pts.reserve(count);
  for (int n = 0; n < count; ++n) pts.push_back(ray.at(start + n));
  return pts;
}

FoliationVec sample_foliation(Rng& rng) {
  const double theta = rng.uniform(0.0, std::numbers::pi);
  return FoliationVec(std::cos(theta), std::sin(theta));
}

}  // namespace trm

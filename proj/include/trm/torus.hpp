#pragma once

#include <cstdint>
#include <vector>

#include "trm/halfplane.hpp"
#include "trm/tolerances.hpp"
#include "trm/weakmetric.hpp"

namespace trm {

/// Measured foliation on the torus: a nonzero real pair (a, b) modulo sign,
/// stored with the first nonzero coordinate positive.
struct FoliationVec {
  double a;
  double b;
  FoliationVec(double a, double b);  // throws on (0, 0) or non-finite
};

/// |a_F b_G - b_F a_G|; symmetric, zero exactly on parallel pairs.
double intersection(const FoliationVec& f, const FoliationVec& g);

/// Extremal length of F at the marked structure tau: |a + b tau|^2 / Im tau.
/// For F = (1, 0) this is exactly 1 / Im tau.
double extremal_length(const HPoint& tau, const FoliationVec& f);

/// The boundary point -a/b (infinity when b = 0): the unique point of the
/// circle at infinity toward which Ext(F) decays along geodesic rays.
BoundaryPoint boundary_point(const FoliationVec& f);

/// The 1-form -(1/2) d log Ext(F) evaluated at tau on the vector v:
/// -Re(b v / (a + b tau)) + Im(v) / (2 Im tau).
double omega_form(const HPoint& tau, cplx v, const FoliationVec& f);

/// Weak distance of the deformed metric on the torus model:
/// hyp_dist + (t/2)(log Ext_{tau1}(F) - log Ext_{tau2}(F)).
double delta_omega(const HPoint& tau1, const HPoint& tau2,
                   const FoliationVec& f, WeightParam t);

/// Disc chart for F: the Moebius map M with Ext(tau, F) * Im(M tau) = 1,
/// normalized via (p, r) = (a, -b)/(a^2 + b^2) in M = (p tau + r)/(b tau + a).
Moebius disc_chart(const FoliationVec& f);

/// log Ext(ray(t), F) evaluated through the ray's exact arc parametrization.
/// Far along a ray the point coordinates alone cannot resolve |a + b z|
/// (the residual is e^{-2t}-small against roundoff); this form can. Set
/// `parallel` when F is directed at the ray's own target (i(F, G) = 0), which
/// zeroes the algebraically-vanishing coefficient.
double log_extremal_length_on_ray(const GeodesicRay& ray, double t,
                                  const FoliationVec& f, bool parallel);

struct IsometryReport {
  long long pairs = 0;
  double max_deviation = 0.0;
  bool pass = false;
};

/// delta_omega(x, y, F, t) == delta_t(M x, M y, t) through the disc chart.
IsometryReport isometry_check(const FoliationVec& f, WeightParam t, int pairs,
                              std::uint64_t seed, const Tolerances& tol = {});

enum class RayVerdict { Bounded, Divergent };

/// delta-omega profile along the Teichmueller ray toward boundary_point(G),
/// with the decay e^{-delta}, a boundedness verdict, and the limit estimate
/// against the closed-form Walsh value i(G,F)/sqrt(Ext_x(G)).
struct RayReport {
  std::vector<double> t_grid;
  std::vector<double> delta_values;
  std::vector<double> decay_values;  // e^{-delta}, non-increasing
  RayVerdict verdict = RayVerdict::Bounded;
  double limit_estimate = 0.0;
  double walsh_value = 0.0;
  double monotonicity_violation = 0.0;  // max increase of decay_values
  double tail_slope = 0.0;              // LS slope of delta over last half
  double tail_oscillation = 0.0;        // max-min of delta over last half
};

RayReport ray_profile(const HPoint& x, const FoliationVec& g,
                      const FoliationVec& f, double t_max, int samples,
                      const Tolerances& tol = {});

struct GardinerReport {
  double analytic = 0.0;   // d Ext at tau in direction v
  double best_fd = 0.0;
  double best_step = 0.0;
  double abs_error = 0.0;  // min over the step sweep
  double rel_error = 0.0;  // abs_error / |analytic| (inf when analytic = 0)
};

/// First variation of Ext(F): analytic differential vs central differences
/// over the configured step sweep.
GardinerReport gardiner_check(const HPoint& tau, const FoliationVec& f, cplx v,
                              const Tolerances& tol = {});

/// Points x_n = ray(n) along a ray with i(F, G) != 0 chosen so that
/// Im(x_n) -> 0 while delta_omega(x_n, x_{n+m}) -> 0 (forward Cauchy, not
/// convergent: the metric is incomplete on the disc).
std::vector<HPoint> incompleteness_witness(const HPoint& x,
                                           const FoliationVec& f,
                                           int count = 12);

/// Seeded foliation, uniform direction on the half-circle.
FoliationVec sample_foliation(Rng& rng);

}  // namespace trm

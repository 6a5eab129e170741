#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "trm/halfplane.hpp"
#include "trm/tolerances.hpp"

namespace trm {

/// Interpolation weight of the family delta_t, 0 <= t <= 1. t = 0 is the
/// symmetric hyperbolic distance, t = 1 the fully deformed weak metric.
struct WeightParam {
  double t;
  WeightParam(double value);  // throws outside [0, 1]
};

/// Sup over x in R of |(z2 - x)/(z1 - x)|, with M = 1 for z1 == z2.
/// Computed on a tan(theta) grid plus golden-section refinement; the ratio
/// has at most one interior maximum and tends to 1 at both ends.
double big_m(const HPoint& z1, const HPoint& z2, const Tolerances& tol = {});

/// Closed form of the weak distance:
/// log((|z2 - conj(z1)| + |z2 - z1|) / (2 Im z1)). Equals log(big_m).
double delta_closed(const HPoint& z1, const HPoint& z2);

/// Interpolating family: hyp_dist(z1, z2) + (t/2) log(Im z2 / Im z1).
double delta_t(const HPoint& z1, const HPoint& z2, WeightParam t);

/// Randers-deformed Finsler norm hyp_norm(v) + (t/2) Im(v)/Im(base).
/// Vanishes on nonzero vectors only at t = 1, straight down.
double finsler_norm(const HTangent& v, WeightParam t);

/// A C^1 path known through a position callable, a strictly increasing
/// parameter grid (>= 2 samples, defining the quadrature panels), and an
/// optional analytic derivative. Without the oracle, velocities come from
/// central finite differences on the position.
class PathSample {
 public:
  using Pos = std::function<HPoint(double)>;
  using Vel = std::function<cplx(double)>;

  static PathSample make(std::vector<double> grid, Pos pos, Vel vel = {});

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<HPoint>& points() const { return points_; }
  HPoint pos(double s) const { return pos_(s); }
  cplx velocity(double s) const;
  bool has_analytic_velocity() const { return static_cast<bool>(vel_); }

 private:
  PathSample() = default;
  std::vector<double> grid_;
  std::vector<HPoint> points_;
  Pos pos_;
  Vel vel_;
};

/// Uniformly sampled PathSample over a geodesic segment (analytic velocity).
PathSample geodesic_path(const Geodesic& g, int samples = 65);

/// Length of the path in the delta_t Finsler norm, by composite quadrature.
double path_length(const PathSample& p, WeightParam t,
                   const Tolerances& tol = {});

/// Length in the underlying symmetric (curvature -4) metric.
double hyperbolic_length(const PathSample& p, const Tolerances& tol = {});

struct MinimalityReport {
  int perturbations = 0;
  double amplitude = 0.0;    // max displacement used
  double base_margin = 0.0;  // |length(geodesic) - delta_t|
  double min_margin = 0.0;
  double max_margin = 0.0;
  bool all_positive = false;
};

/// Perturbs the geodesic between z1 and z2 with random smooth bumps (fixed
/// endpoints) and compares each perturbed length with delta_t. amplitude_frac
/// scales the displacement relative to the lowest Im along the geodesic.
MinimalityReport geodesic_minimality_probe(const HPoint& z1, const HPoint& z2,
                                           WeightParam t, int perturbations,
                                           std::uint64_t seed,
                                           double amplitude_frac = 0.25,
                                           const Tolerances& tol = {});

struct SymmetrizationReport {
  long long pairs = 0;
  double max_deviation = 0.0;
  bool pass = false;
};

/// (delta_t(x,y) + delta_t(y,x)) / 2 == hyp_dist(x,y) on seeded pairs.
SymmetrizationReport symmetrization_check(int pairs, std::uint64_t seed,
                                          WeightParam t,
                                          const Tolerances& tol = {});

struct WeakAxiomsReport {
  long long triples = 0;
  double max_diagonal = 0.0;       // |delta(x,x)|
  double min_value = 0.0;          // most negative delta seen
  double max_triangle_excess = 0.0;
  bool pass = false;
};

/// delta(x,x) = 0, delta >= 0, triangle inequality on seeded triples.
WeakAxiomsReport weak_axioms_check(int triples, std::uint64_t seed,
                                   WeightParam t, const Tolerances& tol = {});

}  // namespace trm

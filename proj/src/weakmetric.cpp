#include "trm/weakmetric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "trm/quadrature.hpp"

namespace trm {

namespace {

// Squared ratio |z2 - x|^2 / |z1 - x|^2 at x = tan(theta).
double ratio_sq(const HPoint& z1, const HPoint& z2, double theta) {
  const double x = std::tan(theta);
  const double dx2 = z2.re() - x, dx1 = z1.re() - x;
  return (dx2 * dx2 + z2.im() * z2.im()) / (dx1 * dx1 + z1.im() * z1.im());
}

// Golden-section maximization on [lo, hi] to absolute tolerance in theta.
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::max(fc, fd);
}

int subpanels(int total_panels, int intervals) {
  return std::max(1, (total_panels + intervals - 1) / intervals);
}

template <class Norm>
double integrate_path(const PathSample& p, const Tolerances& tol,
                      Norm&& norm) {
  const auto& grid = p.grid();
  const int intervals = static_cast<int>(grid.size()) - 1;
  const int sub = subpanels(tol.quad_panels, intervals);
  double total = 0.0;
  for (int i = 0; i < intervals; ++i) {
    total += integrate_panels(
        [&](double s) { return norm(HTangent{p.pos(s), p.velocity(s)}); },
        grid[i], grid[i + 1], sub, tol.quad_nodes);
  }
  return total;
}

}  // namespace

WeightParam::WeightParam(double value) : t(value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw std::domain_error("WeightParam: t must lie in [0, 1]");
}

double big_m(const HPoint& z1, const HPoint& z2, const Tolerances& tol) {
  if (z1 == z2) return 1.0;
  const int n = tol.sup_grid_size;
  const double pi = std::numbers::pi;
  // Interior midpoint grid in theta; the boundary limit is ratio 1.
  double best = -1.0;
  int best_j = 0;
  for (int j = 0; j < n; ++j) {
    const double theta = -0.5 * pi + pi * (j + 0.5) / n;
    const double q = ratio_sq(z1, z2, theta);
    if (q > best) {
      best = q;
      best_j = j;
    }
  }
  const double lo = std::max(-0.5 * pi + 1e-16,
                             -0.5 * pi + pi * (best_j - 0.5) / n);
  const double hi = std::min(0.5 * pi - 1e-16,
                             -0.5 * pi + pi * (best_j + 1.5) / n);
  const double refined = golden_max(
      [&](double th) { return ratio_sq(z1, z2, th); }, lo, hi,
      tol.sup_refine_tol);
  return std::sqrt(std::max(1.0, std::max(best, refined)));
}

double delta_closed(const HPoint& z1, const HPoint& z2) {
  const cplx a = z2.z() - std::conj(z1.z());
  const cplx b = z2.z() - z1.z();
  return std::log((std::abs(a) + std::abs(b)) / (2.0 * z1.im()));
}

double delta_t(const HPoint& z1, const HPoint& z2, WeightParam t) {
  return hyp_dist(z1, z2) + 0.5 * t.t * std::log(z2.im() / z1.im());
}

double finsler_norm(const HTangent& v, WeightParam t) {
  return hyp_norm(v) + 0.5 * t.t * v.v.imag() / v.base.im();
}

PathSample PathSample::make(std::vector<double> grid, Pos pos, Vel vel) {
  if (grid.size() < 2)
    throw std::invalid_argument("PathSample: need at least 2 samples");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("PathSample: grid must be strictly increasing");
  if (!pos) throw std::invalid_argument("PathSample: missing position callable");
  PathSample p;
  p.grid_ = std::move(grid);
  p.pos_ = std::move(pos);
  p.vel_ = std::move(vel);
  p.points_.reserve(p.grid_.size());
  for (double s : p.grid_) p.points_.push_back(p.pos_(s));
  return p;
}

cplx PathSample::velocity(double s) const {
  if (vel_) return vel_(s);
  const double a = grid_.front(), b = grid_.back();
  double h = (b - a) * 1e-7;
  // keep the stencil inside the parameter interval
  h = std::min({h, s - a > 0 ? s - a : h, b - s > 0 ? b - s : h});
  if (h <= 0.0) h = (b - a) * 1e-7;
  const double s1 = std::max(a, s - h), s2 = std::min(b, s + h);
  return (pos_(s2).z() - pos_(s1).z()) / (s2 - s1);
}

PathSample geodesic_path(const Geodesic& g, int samples) {
  if (samples < 2) throw std::invalid_argument("geodesic_path: samples < 2");
  std::vector<double> grid(samples);
  for (int i = 0; i < samples; ++i)
    grid[i] = g.length() * static_cast<double>(i) / (samples - 1);
  return PathSample::make(
      grid, [g](double s) { return g.at(s); },
      [g](double s) { return g.velocity(s); });
}

double path_length(const PathSample& p, WeightParam t, const Tolerances& tol) {
  return integrate_path(p, tol,
                        [&](const HTangent& v) { return finsler_norm(v, t); });
}

double hyperbolic_length(const PathSample& p, const Tolerances& tol) {
  return integrate_path(p, tol, [](const HTangent& v) { return hyp_norm(v); });
}

MinimalityReport geodesic_minimality_probe(const HPoint& z1, const HPoint& z2,
                                           WeightParam t, int perturbations,
                                           std::uint64_t seed,
                                           double amplitude_frac,
                                           const Tolerances& tol) {
  const Geodesic g(z1, z2);
  const double len = g.length();
  const double target = delta_t(z1, z2, t);

  double min_im = std::min(z1.im(), z2.im());
  for (int i = 1; i < 64; ++i)
    min_im = std::min(min_im, g.at(len * i / 64.0).im());
  const double amp = amplitude_frac * 0.5 * min_im;

  MinimalityReport rep;
  rep.perturbations = perturbations;
  rep.amplitude = amp;
  rep.base_margin =
      std::abs(path_length(geodesic_path(g), t, tol) - target);

  Rng rng(seed);
  const double pi = std::numbers::pi;
  bool all_pos = true;
  double lo = 0.0, hi = 0.0;
  for (int k = 0; k < perturbations; ++k) {
    // three-mode bump, vanishing at the endpoints, nonzero deviation
    cplx coef[3];
    double sup = 0.0;
    do {
      for (auto& c : coef) c = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
      sup = 0.0;
      for (int i = 0; i <= 32; ++i) {
        const double s = len * i / 32.0;
        cplx b{0, 0};
        for (int m = 0; m < 3; ++m)
          b += coef[m] * std::sin((m + 1) * pi * s / len);
        sup = std::max(sup, std::abs(b));
      }
    } while (sup < 1e-3);
    const double scale = amp / sup;
    auto bump = [coef, len, pi](double s) {
      cplx b{0, 0};
      for (int m = 0; m < 3; ++m)
        b += coef[m] * std::sin((m + 1) * pi * s / len);
      return b;
    };
    auto dbump = [coef, len, pi](double s) {
      cplx b{0, 0};
      for (int m = 0; m < 3; ++m)
        b += coef[m] * ((m + 1) * pi / len) * std::cos((m + 1) * pi * s / len);
      return b;
    };
    std::vector<double> grid(65);
    for (int i = 0; i < 65; ++i) grid[i] = len * i / 64.0;
    PathSample perturbed = PathSample::make(
        grid,
        [g, bump, scale](double s) {
          return HPoint(g.at(s).z() + scale * bump(s));
        },
        [g, dbump, scale](double s) {
          return g.velocity(s) + scale * dbump(s);
        });
    const double margin = path_length(perturbed, t, tol) - target;
    if (k == 0) {
      lo = hi = margin;
    } else {
      lo = std::min(lo, margin);
      hi = std::max(hi, margin);
    }
    if (!(margin > 0.0)) all_pos = false;
  }
  rep.min_margin = lo;
  rep.max_margin = hi;
  rep.all_positive = perturbations > 0 && all_pos;
  return rep;
}

SymmetrizationReport symmetrization_check(int pairs, std::uint64_t seed,
                                          WeightParam t,
                                          const Tolerances& tol) {
  Rng rng(seed);
  SymmetrizationReport rep;
  rep.pairs = pairs;
  for (int i = 0; i < pairs; ++i) {
    const HPoint x = sample_point(rng), y = sample_point(rng);
    const double sym = 0.5 * (delta_t(x, y, t) + delta_t(y, x, t));
    rep.max_deviation =
        std::max(rep.max_deviation, std::abs(sym - hyp_dist(x, y)));
  }
  rep.pass = rep.max_deviation <= tol.tol_exact;
  return rep;
}

WeakAxiomsReport weak_axioms_check(int triples, std::uint64_t seed,
                                   WeightParam t, const Tolerances& tol) {
  Rng rng(seed);
  WeakAxiomsReport rep;
  rep.triples = triples;
  for (int i = 0; i < triples; ++i) {
    const HPoint x = sample_point(rng), y = sample_point(rng),
                 z = sample_point(rng);
    rep.max_diagonal = std::max(rep.max_diagonal, std::abs(delta_t(x, x, t)));
    const double dxy = delta_t(x, y, t);
    const double dyz = delta_t(y, z, t);
    const double dxz = delta_t(x, z, t);
    rep.min_value = std::min({rep.min_value, dxy, dyz, dxz});
    rep.max_triangle_excess =
        std::max(rep.max_triangle_excess, dxz - (dxy + dyz));
  }
  rep.pass = rep.max_diagonal <= tol.tol_exact &&
             rep.min_value >= -tol.tol_exact &&
             rep.max_triangle_excess <= tol.tol_exact;
  return rep;
}

}  // namespace trm

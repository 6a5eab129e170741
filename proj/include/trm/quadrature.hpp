#pragma once

#include <vector>

namespace trm {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Cached table for an n-point rule (n >= 1). Thread-safe.
  static const GaussLegendre& get(int n);
};

/// Composite Gauss-Legendre quadrature of f over [a, b] with uniform panels.
template <class F>
double integrate_panels(F&& f, double a, double b, int panels, int nodes) {
  const GaussLegendre& gl = GaussLegendre::get(nodes);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
      acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
    total += acc * half;
  }
  return total;
}

}  // namespace trm

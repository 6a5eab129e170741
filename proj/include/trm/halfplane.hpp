#pragma once

#include <complex>

#include "trm/sampling.hpp"

namespace trm {

using cplx = std::complex<double>;

/// A point of the upper half-plane H = { z : Im z > 0 }. Construction rejects
/// Im <= 0 and non-finite coordinates.
class HPoint {
 public:
  HPoint(double re, double im);
  explicit HPoint(cplx z) : HPoint(z.real(), z.imag()) {}

  double re() const { return re_; }
  double im() const { return im_; }
  cplx z() const { return {re_, im_}; }

  friend bool operator==(const HPoint& a, const HPoint& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  double re_;
  double im_;
};

/// Tangent vector v attached at a base point; v may be zero.
struct HTangent {
  HPoint base;
  cplx v;
};

/// Boundary point of H: a real number or the point at infinity.
class BoundaryPoint {
 public:
  static BoundaryPoint infinity() { return BoundaryPoint(true, 0.0); }
  static BoundaryPoint at(double x);

  bool is_infinity() const { return infinite_; }
  double x() const;  // throws if infinite

 private:
  BoundaryPoint(bool inf, double x) : infinite_(inf), x_(x) {}
  bool infinite_;
  double x_;
};

/// Real Moebius map tau -> (a tau + b) / (c tau + d), stored normalized to
/// ad - bc = 1. Acts on H as an orientation-preserving isometry.
class Moebius {
 public:
  Moebius(double a, double b, double c, double d);  // requires ad - bc > 0

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

  cplx apply(cplx tau) const;
  Moebius inverse() const { return Moebius(d_, -b_, -c_, a_); }
  static Moebius identity() { return Moebius(1, 0, 0, 1); }

  friend Moebius operator*(const Moebius& m, const Moebius& n) {
    return Moebius(m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
                   m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_);
  }

 private:
  double a_, b_, c_, d_;
};

/// Norm of a tangent vector in the curvature -4 hyperbolic metric:
/// |v| / (2 Im(base)). With this normalization the induced distance equals
/// the Teichmueller distance of the torus model.
double hyp_norm(const HTangent& t);

/// Curvature -4 hyperbolic distance, i.e. half the Poincare (curvature -1)
/// distance: atanh(|p - q| / |p - conj(q)|).
double hyp_dist(const HPoint& p, const HPoint& q);

/// Unit-speed geodesic segment between two distinct points. The image is a
/// vertical segment or an arc of a semicircle orthogonal to the real axis.
///
/// Circular arcs are evaluated through the feet (u, v) of the supporting
/// semicircle: z(y) = (u + v y^2 + i (v - u) y) / (1 + y^2) with y = e^{2a}
/// and a the signed arclength coordinate. This form is stable even when the
/// circle is very large (nearly vertical segments).
class Geodesic {
 public:
  Geodesic(const HPoint& p, const HPoint& q);  // throws on p == q

  double length() const { return length_; }
  HPoint at(double s) const;         // s in [0, length()]
  cplx velocity(double s) const;     // unit speed in hyp_norm
  bool is_vertical() const { return vertical_; }
  double foot_low() const;   // smaller foot (circular case)
  double foot_high() const;  // larger foot (circular case)

 private:
  friend class GeodesicRay;
  Geodesic() = default;
  bool vertical_ = false;
  // vertical: z(s) = x0 + i exp(2 (a0 + dir s))
  // circular: y(s) = exp(2 (a0 + dir s)), z via the feet formula
  double x0_ = 0.0, u_ = 0.0, v_ = 0.0;
  double a0_ = 0.0, dir_ = 1.0, length_ = 0.0;
};

/// Unit-speed geodesic ray from p toward a boundary point.
///
/// The exact arc parametrization is exposed (feet and the coordinate
/// a(t) with y = e^{2a}) so that quantities which cancel catastrophically in
/// point coordinates near the boundary can be evaluated stably.
class GeodesicRay {
 public:
  GeodesicRay(const HPoint& p, const BoundaryPoint& target);

  HPoint at(double t) const;      // t >= 0
  cplx velocity(double t) const;  // unit speed
  BoundaryPoint target() const { return target_; }

  bool is_vertical() const { return g_.vertical_; }
  double vertical_x() const;  // circular rays have no vertical line
  double foot_low() const { return g_.foot_low(); }
  double foot_high() const { return g_.foot_high(); }
  bool toward_high_foot() const { return g_.dir_ > 0; }  // or toward infinity
  double arc_coordinate(double t) const { return g_.a0_ + g_.dir_ * t; }

 private:
  Geodesic g_;  // reused evaluation machinery; dir chosen toward target
  BoundaryPoint target_;
};

Geodesic geodesic(const HPoint& p, const HPoint& q);
GeodesicRay geodesic_ray(const HPoint& p, const BoundaryPoint& x);
HPoint mobius_apply(const Moebius& m, const HPoint& p);

/// Seeded sample point: Re uniform in [-3, 3], Im log-uniform in [0.05, 5].
HPoint sample_point(Rng& rng);

}  // namespace trm

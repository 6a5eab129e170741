#include "trm/halfplane.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trm {

namespace {

double point_scale(const HPoint& p, const HPoint& q) {
  return std::max({1.0, std::abs(p.re()), std::abs(q.re()), p.im(), q.im()});
}

// Second foot of the semicircle through p with one foot at b. Offset form
// avoids the cancellation of the textbook center formula.
double other_foot(const HPoint& p, double b) {
  return p.re() + p.im() * p.im() / (p.re() - b);
}

// Arclength coordinate of p on the semicircle with feet u < v. Both exact
// identities y = im/(v - re) = (re - u)/im hold on the circle; pick the one
// whose subtraction is larger.
double arc_position(const HPoint& p, double u, double v) {
  const double right = v - p.re();
  const double left = p.re() - u;
  const double y = (right >= left) ? p.im() / right : left / p.im();
  return 0.5 * std::log(y);
}

}  // namespace

HPoint::HPoint(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im))
    throw std::domain_error("HPoint: coordinates must be finite");
  if (!(im > 0.0))
    throw std::domain_error("HPoint: not in the upper half-plane (Im <= 0)");
}

BoundaryPoint BoundaryPoint::at(double x) {
  if (!std::isfinite(x))
    throw std::domain_error("BoundaryPoint: coordinate must be finite");
  return BoundaryPoint(false, x);
}

double BoundaryPoint::x() const {
  if (infinite_)
    throw std::domain_error("BoundaryPoint: no finite coordinate at infinity");
  return x_;
}

Moebius::Moebius(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0.0) || !std::isfinite(det))
    throw std::domain_error("Moebius: requires ad - bc > 0");
  const double s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

cplx Moebius::apply(cplx tau) const {
  return (a_ * tau + b_) / (c_ * tau + d_);
}

double hyp_norm(const HTangent& t) {
  return std::abs(t.v) / (2.0 * t.base.im());
}

double hyp_dist(const HPoint& p, const HPoint& q) {
  const cplx pz = p.z(), qz = q.z();
  const double n = std::abs(pz - qz);
  const double m = std::abs(pz - std::conj(qz));
  if (n < 0.1 * m) return std::atanh(n / m);
  // m^2 - n^2 = 4 Im(p) Im(q) exactly, so the log form stays accurate when
  // n/m -> 1 (points far apart or near the boundary).
  return 0.5 * std::log((m + n) * (m + n) / (4.0 * p.im() * q.im()));
}

Geodesic::Geodesic(const HPoint& p, const HPoint& q) {
  if (p == q) throw std::domain_error("geodesic: degenerate path (p == q)");
  const double scale = point_scale(p, q);
  if (std::abs(p.re() - q.re()) <= 1e-13 * scale) {
    vertical_ = true;
    x0_ = p.re();
    a0_ = 0.5 * std::log(p.im());
    const double a1 = 0.5 * std::log(q.im());
    dir_ = (a1 >= a0_) ? 1.0 : -1.0;
    length_ = std::abs(a1 - a0_);
    return;
  }
  // Center and the stable pair of feet: the root near the origin comes from
  // the product u*v = 2 Re(p) c - |p|^2 (power of 0 w.r.t. the circle).
  const double c = (std::norm(q.z()) - std::norm(p.z())) /
                   (2.0 * (q.re() - p.re()));
  const double r = std::hypot(p.re() - c, p.im());
  const double far = c + std::copysign(r, c);
  const double prod = 2.0 * p.re() * c - std::norm(p.z());
  const double near = (far != 0.0) ? prod / far : c - std::copysign(r, c);
  u_ = std::min(far, near);
  v_ = std::max(far, near);
  a0_ = arc_position(p, u_, v_);
  const double a1 = arc_position(q, u_, v_);
  dir_ = (a1 >= a0_) ? 1.0 : -1.0;
  length_ = std::abs(a1 - a0_);
}

HPoint Geodesic::at(double s) const {
  const double a = a0_ + dir_ * s;
  if (vertical_) return HPoint(x0_, std::exp(2.0 * a));
  const double y = std::exp(2.0 * a);
  if (y > 1e100)  // asymptotic branch near the v foot
    return HPoint(v_ - (v_ - u_) / (y * y), (v_ - u_) / y);
  if (y < 1e-100)
    return HPoint(u_ + (v_ - u_) * y * y, (v_ - u_) * y);
  const double denom = 1.0 + y * y;
  return HPoint((u_ + v_ * y * y) / denom, (v_ - u_) * y / denom);
}

cplx Geodesic::velocity(double s) const {
  const double a = a0_ + dir_ * s;
  if (vertical_) return cplx(0.0, 2.0 * dir_ * std::exp(2.0 * a));
  const double y = std::exp(2.0 * a);
  const double denom = 1.0 + y * y;
  // dz/dy = (v-u)(2y + i(1 - y^2))/(1+y^2)^2, dy/ds = 2 dir y
  const cplx dzdy = (v_ - u_) * cplx(2.0 * y, 1.0 - y * y) / (denom * denom);
  return dzdy * (2.0 * dir_ * y);
}

double Geodesic::foot_low() const {
  if (vertical_) throw std::domain_error("geodesic: vertical line has one foot");
  return u_;
}

double Geodesic::foot_high() const {
  if (vertical_) throw std::domain_error("geodesic: vertical line has one foot");
  return v_;
}

GeodesicRay::GeodesicRay(const HPoint& p, const BoundaryPoint& target)
    : target_(target) {
  Geodesic g;
  if (target.is_infinity()) {
    g.vertical_ = true;
    g.x0_ = p.re();
    g.a0_ = 0.5 * std::log(p.im());
    g.dir_ = 1.0;
  } else {
    const double b = target.x();
    const double scale =
        std::max({1.0, std::abs(p.re()), std::abs(b), p.im()});
    if (std::abs(p.re() - b) <= 1e-13 * scale) {
      g.vertical_ = true;
      g.x0_ = p.re();
      g.a0_ = 0.5 * std::log(p.im());
      g.dir_ = -1.0;
    } else {
      const double other = other_foot(p, b);
      g.u_ = std::min(b, other);
      g.v_ = std::max(b, other);
      g.a0_ = arc_position(p, g.u_, g.v_);
      g.dir_ = (b == g.v_) ? 1.0 : -1.0;
    }
  }
  g_ = g;
}

double GeodesicRay::vertical_x() const {
  if (!g_.vertical_)
    throw std::domain_error("geodesic ray: not a vertical line");
  return g_.x0_;
}

HPoint GeodesicRay::at(double t) const { return g_.at(t); }

cplx GeodesicRay::velocity(double t) const { return g_.velocity(t); }

Geodesic geodesic(const HPoint& p, const HPoint& q) { return Geodesic(p, q); }

GeodesicRay geodesic_ray(const HPoint& p, const BoundaryPoint& x) {
  return GeodesicRay(p, x);
}

HPoint mobius_apply(const Moebius& m, const HPoint& p) {
  return HPoint(m.apply(p.z()));
}

HPoint sample_point(Rng& rng) {
  return HPoint(rng.uniform(-3.0, 3.0), rng.log_uniform(0.05, 5.0));
}

}  // namespace trm

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "trm/sampling.hpp"
#include "trm/tolerances.hpp"

namespace trm {

using cplx = std::complex<double>;

/// One basis function over the unit square:
/// (c0 + cx x + cy y + cxy x y) * exp(i pi (kx x + ky y)).
/// Text form: "poly c0 cx cy [xy cxy] [phase kx ky]" (or the shorthand "one").
struct BasisTerm {
  double c0 = 1.0, cx = 0.0, cy = 0.0, cxy = 0.0;
  double kx = 0.0, ky = 0.0;

  cplx eval(double x, double y) const;
  static BasisTerm parse(const std::string& spec);
  std::string str() const;
};

/// Discretized measure space with a k-dimensional span of "quadratic
/// differentials". Grid cells are the midpoints of an nx-by-ny subdivision of
/// the unit square; every cell weight is the cell area, so the total measure
/// is 1. Basis values are cached per cell at construction, and the Gram
/// matrix of the basis under the weighted L2 pairing must be nonsingular.
class ModelSpace {
 public:
  ModelSpace(int nx, int ny, std::vector<BasisTerm> basis,
             std::uint64_t seed = 0);

  int cells() const { return static_cast<int>(weights_.size()); }
  int dim() const { return static_cast<int>(basis_.size()); }
  double weight(int c) const { return weights_[c]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<cplx>& basis_values(int j) const { return values_[j]; }
  const std::vector<BasisTerm>& basis() const { return basis_; }
  double gram_condition() const { return gram_condition_; }
  std::uint64_t seed() const { return seed_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  /// Default spaces used by the verification suites (64x64 grid).
  static ModelSpace default_k1();
  static ModelSpace default_k2();

 private:
  int nx_, ny_;
  std::uint64_t seed_;
  std::vector<BasisTerm> basis_;
  std::vector<double> weights_;
  std::vector<std::vector<cplx>> values_;  // [basis][cell]
  double gram_condition_ = 0.0;
};

/// Element of the span, held as coefficients over the basis.
struct ModelQD {
  std::vector<cplx> coeffs;
};

/// Grid "Beltrami differential": one bounded value per cell.
struct ModelBeltrami {
  std::vector<cplx> values;
};

/// Pointwise values of phi on the grid.
std::vector<cplx> qd_values(const ModelSpace& s, const ModelQD& phi);

/// Weighted L1 norm of phi (a norm on the span).
double l1_norm(const ModelSpace& s, const ModelQD& phi);

/// Max cell modulus.
double linf_norm(const ModelBeltrami& mu);

/// Complex-bilinear pairing sum(w mu phi); |pairing| <= linf(mu) l1(phi).
cplx pairing(const ModelSpace& s, const ModelBeltrami& mu, const ModelQD& phi);

/// mu = scale * conj(phi)/|phi| pointwise, with cells where |phi| falls under
/// the relative floor set to zero.
ModelBeltrami teichmuller_beltrami(const ModelSpace& s, const ModelQD& phi,
                                   double scale, const Tolerances& tol = {});

struct DualNormResult {
  double value = 0.0;
  ModelQD maximizer;  // unit L1 norm
};

/// Dual (Teichmueller) norm: sup of Re pairing(mu, phi) over unit-L1 phi in
/// the span. Multi-start projected gradient ascent over coefficient
/// directions with a tangent-space Newton polish; deterministic.
DualNormResult teich_dual_norm(const ModelSpace& s, const ModelBeltrami& mu,
                               const Tolerances& tol = {});

/// A nonzero grid function with all k pairings against the basis below the
/// residual tolerance, built by orthogonal projection of a seeded random
/// function against the pairing constraints. Scaled to linf = 1.
ModelBeltrami kernel_element(const ModelSpace& s, std::uint64_t seed,
                             const Tolerances& tol = {});

struct DerivativeReport {
  double analytic = 0.0;  // Re pairing(v, alpha0)
  double best_fd = 0.0;
  double best_step = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;  // abs_error / max(1, |analytic|)
  double base_norm = 0.0;  // dual norm at mu0 (should equal beta)
};

/// Derivative of the dual norm at the Teichmueller point
/// mu0 = beta conj(alpha0)/|alpha0|, alpha0 = v0/l1(v0), along v: central
/// finite differences against the closed form Re pairing(v, alpha0).
DerivativeReport derivative_check(const ModelSpace& s, const ModelQD& v0,
                                  double beta, const ModelBeltrami& v,
                                  const Tolerances& tol = {});

/// Seeded random span element / grid function (coefficients and values in
/// the unit disc).
ModelQD random_qd(const ModelSpace& s, Rng& rng);
ModelBeltrami random_beltrami(const ModelSpace& s, Rng& rng);

}  // namespace trm

#pragma once

#include <cstdint>

#include "trm/modelspace.hpp"
#include "trm/tolerances.hpp"

namespace trm {

/// A real 1-form presented by psi in the span: omega(mu) = Re pairing(mu, psi).
/// Cometric operations require l1_norm(psi) < 1; at exactly 1 the deformed
/// norm is only a weak norm (it vanishes on a nonzero direction).
struct RandersForm {
  ModelQD psi;
  double psi_l1 = 0.0;
  RandersForm(const ModelSpace& s, ModelQD psi_in);
};

/// Deformed norm: teich_dual_norm(mu) + Re pairing(mu, psi).
double randers_norm(const ModelSpace& s, const ModelBeltrami& mu,
                    const RandersForm& form, const Tolerances& tol = {});

/// sup over unit-L1 phi in the span of |pairing(mu, phi)|. The span is closed
/// under complex rotation and the L1 sphere is rotation-invariant, so this
/// equals the real-part sup, i.e. the dual norm itself.
double hamilton_value(const ModelSpace& s, const ModelBeltrami& mu,
                      const Tolerances& tol = {});

/// beta(mu, phi0) = sup over unit-L1 phi of |pairing(mu, phi)| plus the
/// phi-independent term Re pairing(mu, phi0).
double beta(const ModelSpace& s, const ModelBeltrami& mu, const ModelQD& phi0,
            const Tolerances& tol = {});

struct BetaInvarianceReport {
  int trials = 0;
  double max_deviation = 0.0;
  bool pass = false;
};

/// beta is unchanged when mu is perturbed by kernel elements.
BetaInvarianceReport beta_invariance_check(const ModelSpace& s,
                                           const ModelBeltrami& mu,
                                           const ModelQD& phi0, int trials,
                                           std::uint64_t seed,
                                           const Tolerances& tol = {});

struct ExtremalityReport {
  bool extremal_beta = false;      // (a) beta == linf + Re<mu, phi0>
  bool hamilton = false;           // (c) hamilton_value == linf
  bool teich_not_contradicted = false;  // (b) search-based, falsifiable only
  double gap_beta = 0.0;           // linf + Re<..> - beta  (>= 0)
  double gap_hamilton = 0.0;       // linf - hamilton_value (>= 0)
  double min_excess = 0.0;         // min over searched nu of linf(mu-nu)-linf(mu)
};

/// The three extremality predicates at tolerance tol.tol_extremality. (a) and
/// (c) are decided; (b) minimizes over seeded kernel directions and scales,
/// so it can only be reported as "not contradicted".
ExtremalityReport extremality_equivalence_check(const ModelSpace& s,
                                                const ModelBeltrami& mu,
                                                const ModelQD& phi0,
                                                std::uint64_t seed = 7,
                                                const Tolerances& tol = {});

struct CometricResult {
  double value = 0.0;
  double boundary_residual = 0.0;  // | l1(phi/value - psi) - 1 |, 0 for phi=0
};

/// Deformed cometric G(phi) = inf{ t > 0 : l1(phi/t - psi) <= 1 }, solved by
/// bracketed bisection; for phi != 0 the solution satisfies
/// l1(phi/G - psi) = 1. Throws when l1(psi) >= 1 (not a norm there).
CometricResult cometric(const ModelSpace& s, const ModelQD& phi,
                        const RandersForm& form, const Tolerances& tol = {});

struct CometricDualReport {
  double cometric_value = 0.0;
  double dual_estimate = 0.0;  // brute-force sup of Re<mu,phi>/randers_norm
  double rel_error = 0.0;
  int samples = 0;
};

/// Independent route to G(phi): sampled sup of Re pairing(mu, phi) over the
/// deformed unit sphere, using Teichmueller-shaped directions (whose dual
/// norm is exactly 1) plus generic solver-normalized directions, with local
/// refinement.
CometricDualReport cometric_dual_check(const ModelSpace& s, const ModelQD& phi,
                                       const RandersForm& form, int samples,
                                       std::uint64_t seed,
                                       const Tolerances& tol = {});

}  // namespace trm

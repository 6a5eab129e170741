#pragma once

#include <array>

namespace trm {

/// Central numeric configuration. Every solver knob and every property-suite
/// threshold lives here so that a run is fully described by (inputs, seed,
/// Tolerances). Defaults are the contract values used by the verify suites.
struct Tolerances {
  // composite Gauss-Legendre quadrature for path lengths
  int quad_panels = 64;
  int quad_nodes = 8;

  // sup over the real line (weak-metric M): theta-grid size after the
  // x = tan(theta) substitution, then golden-section refinement
  int sup_grid_size = 2048;
  double sup_refine_tol = 1e-10;

  // cometric root solve
  double bisect_rel_tol = 1e-10;

  // dual-norm maximizer (multi-start projected gradient ascent + polish);
  // gradient tolerance only localizes the max, the Newton polish finishes
  int dual_starts = 32;
  int dual_max_iter = 300;
  double dual_grad_tol = 1e-9;

  // central finite-difference step sweep
  std::array<double, 4> fd_steps{1e-3, 1e-4, 1e-5, 1e-6};

  // regularization floor for conj(phi)/|phi| quotients, relative to max |phi|
  double zero_floor_rel = 1e-12;

  // property-suite thresholds
  double tol_exact = 1e-12;            // identities that hold to roundoff
  double tol_quadrature = 1e-9;        // quadrature vs closed forms
  double tol_path_vs_closed = 1e-8;    // geodesic path length vs delta
  double tol_sup_match = 1e-7;         // log M vs closed-form delta
  double tol_interpolation = 1e-9;     // delta_1 vs closed form
  double tol_chart = 1e-12;            // disc-chart extremal-length identity
  double tol_isometry = 1e-9;          // delta_omega vs delta_t through chart
  double tol_kernel_residual = 1e-12;  // pairing residuals of kernel elements
  double tol_dual_invariance = 1e-8;   // dual norm under kernel perturbation
  double tol_dual_homogeneity = 1e-10;
  double tol_dual_subadditive = 1e-8;
  double tol_dual_brute = 1e-5;        // solver vs brute-force sphere search
  double tol_derivative = 1e-4;        // norm-derivative finite differences
  double tol_derivative_kernel = 1e-6;
  double tol_beta_invariance = 1e-7;
  double tol_beta_inequality = 1e-9;
  double tol_extremality = 1e-6;
  double tol_boundary_residual = 1e-9;  // |l1(phi/G - psi) - 1|
  double tol_gardiner = 1e-6;           // relative, analytic vs FD
  double tol_omega_form = 1e-7;         // 1-form vs FD of -(1/2) log Ext
  double tol_kerckhoff = 1e-7;          // d log Ext / dt = -2 along own ray
  double tol_decay_monotone = 1e-9;
  double tol_walsh_rel = 0.02;          // limit estimate vs Walsh value

  // ray-length boundedness classifier
  double ray_divergent_slope = 0.05;  // least-squares slope over last window
  double ray_bounded_osc = 1e-3;      // oscillation over the last half grid
};

}  // namespace trm

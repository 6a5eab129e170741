#include "trm/modelspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace trm {

namespace {

// ---- small dense linear algebra (k <= 4, so sizes <= 8) ----

// Cyclic Jacobi eigenvalues of a symmetric matrix (row-major n x n).
std::vector<double> sym_eigenvalues(std::vector<double> m, int n) {
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m[i * n + j] * m[i * n + j];
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = 0.5 * (m[q * n + q] - m[p * n + p]) / apq;
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double mip = m[i * n + p], miq = m[i * n + q];
          m[i * n + p] = c * mip - s * miq;
          m[i * n + q] = s * mip + c * miq;
        }
        for (int i = 0; i < n; ++i) {
          const double mpi = m[p * n + i], mqi = m[q * n + i];
          m[p * n + i] = c * mpi - s * mqi;
          m[q * n + i] = s * mpi + c * mqi;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = m[i * n + i];
  return ev;
}

// Gaussian elimination with partial pivoting; returns false if singular.
bool solve_dense(std::vector<double> a, std::vector<double> b, int n,
                 std::vector<double>& x) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-14) return false;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r * n + c] * x[c];
    x[r] = acc / a[r * n + r];
  }
  return true;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void normalize(std::vector<double>& a) {
  const double n = norm2(a);
  if (n > 0)
    for (auto& x : a) x /= n;
}

inline double cabs(cplx z) { return std::sqrt(std::norm(z)); }

// ---- dual-norm objective ----
//
// Coefficients c in C^k are flattened to u in R^{2k}. The objective is
// g(u) = (l . u) / N(u) with l the pairing functional and N the weighted L1
// norm of phi_u; g is 0-homogeneous, so the maximum over the unit sphere is
// the dual norm. Hot path: no allocation, sqrt-based modulus.
struct DualObjective {
  const ModelSpace& s;
  int k;
  int n;
  const double* w;
  const cplx* bases[8];
  std::vector<double> l;
  mutable std::vector<double> gn_scratch;

  explicit DualObjective(const ModelSpace& space, const ModelBeltrami& mu)
      : s(space), k(space.dim()), n(space.cells()), w(space.weights().data()) {
    for (int j = 0; j < k; ++j) bases[j] = space.basis_values(j).data();
    l.assign(2 * k, 0.0);
    for (int j = 0; j < k; ++j) {
      cplx p{0, 0};
      for (int c = 0; c < n; ++c) p += w[c] * mu.values[c] * bases[j][c];
      l[2 * j] = p.real();
      l[2 * j + 1] = -p.imag();
    }
    gn_scratch.assign(2 * k, 0.0);
  }

  double l1(const std::vector<double>& u, std::vector<double>* grad) const {
    if (grad) std::fill(grad->begin(), grad->end(), 0.0);
    double total = 0.0;
    for (int c = 0; c < n; ++c) {
      double pr = 0.0, pi = 0.0;
      for (int j = 0; j < k; ++j) {
        const double br = bases[j][c].real(), bi = bases[j][c].imag();
        pr += u[2 * j] * br - u[2 * j + 1] * bi;
        pi += u[2 * j] * bi + u[2 * j + 1] * br;
      }
      const double m = std::sqrt(pr * pr + pi * pi);
      total += w[c] * m;
      if (grad && m > 1e-300) {
        const double wm = w[c] / m;
        for (int j = 0; j < k; ++j) {
          const double br = bases[j][c].real(), bi = bases[j][c].imag();
          (*grad)[2 * j] += wm * (pr * br + pi * bi);
          (*grad)[2 * j + 1] -= wm * (pr * bi - pi * br);
        }
      }
    }
    return total;
  }

  double value(const std::vector<double>& u) const {
    const double nn = l1(u, nullptr);
    return nn > 0 ? dot(l, u) / nn : 0.0;
  }

  double value_grad(const std::vector<double>& u,
                    std::vector<double>& grad) const {
    const double nn = l1(u, &gn_scratch);
    const double f = dot(l, u);
    const double g = f / nn;
    grad.resize(2 * k);
    for (int i = 0; i < 2 * k; ++i)
      grad[i] = l[i] / nn - f * gn_scratch[i] / (nn * nn);
    return g;
  }
};

// Orthonormal tangent basis at u (columns of T, each of length 2k).
std::vector<std::vector<double>> tangent_basis(const std::vector<double>& u) {
  const int n = static_cast<int>(u.size());
  std::vector<std::vector<double>> t;
  for (int i = 0; i < n && static_cast<int>(t.size()) < n - 1; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    double cu = dot(e, u);
    for (int j = 0; j < n; ++j) e[j] -= cu * u[j];
    for (const auto& prev : t) {
      const double cp = dot(e, prev);
      for (int j = 0; j < n; ++j) e[j] -= cp * prev[j];
    }
    const double nn = norm2(e);
    if (nn > 1e-8) {
      for (auto& x : e) x /= nn;
      t.push_back(std::move(e));
    }
  }
  return t;
}

// A few Newton steps in tangent coordinates to polish the sphere maximum to
// near machine accuracy (the post-PGA landscape is locally quadratic).
void newton_polish(const DualObjective& obj, std::vector<double>& u,
                   double& best) {
  const int n = static_cast<int>(u.size());
  if (n < 2) return;
  for (int round = 0; round < 4; ++round) {
    const auto tb = tangent_basis(u);
    const int m = static_cast<int>(tb.size());
    if (m == 0) return;
    auto eval = [&](const std::vector<double>& th) {
      std::vector<double> w = u;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) w[j] += th[i] * tb[i][j];
      normalize(w);
      return obj.value(w);
    };
    const double delta = 1e-5;
    const double h0 = best;
    std::vector<double> grad(m), hess(m * m);
    for (int i = 0; i < m; ++i) {
      std::vector<double> tp(m, 0.0), tm(m, 0.0);
      tp[i] = delta;
      tm[i] = -delta;
      const double fp = eval(tp), fm = eval(tm);
      grad[i] = (fp - fm) / (2 * delta);
      hess[i * m + i] = (fp - 2 * h0 + fm) / (delta * delta);
    }
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        std::vector<double> tpp(m, 0.0), tpm(m, 0.0), tmp(m, 0.0), tmm(m, 0.0);
        tpp[i] = delta;
        tpp[j] = delta;
        tpm[i] = delta;
        tpm[j] = -delta;
        tmp[i] = -delta;
        tmp[j] = delta;
        tmm[i] = -delta;
        tmm[j] = -delta;
        const double v =
            (eval(tpp) - eval(tpm) - eval(tmp) + eval(tmm)) / (4 * delta * delta);
        hess[i * m + j] = hess[j * m + i] = v;
      }
    std::vector<double> rhs(m), step;
    for (int i = 0; i < m; ++i) rhs[i] = -grad[i];
    if (!solve_dense(hess, rhs, m, step)) return;
    // backtrack if the Newton step overshoots
    double factor = 1.0;
    bool improved = false;
    for (int half = 0; half < 8; ++half, factor *= 0.5) {
      std::vector<double> th(m);
      for (int i = 0; i < m; ++i) th[i] = factor * step[i];
      const double v = eval(th);
      if (v > best) {
        std::vector<double> w = u;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j) w[j] += th[i] * tb[i][j];
        normalize(w);
        u = w;
        best = v;
        improved = true;
        break;
      }
    }
    if (!improved) return;
  }
}

}  // namespace

cplx BasisTerm::eval(double x, double y) const {
  const double p = c0 + cx * x + cy * y + cxy * x * y;
  const double ph = std::numbers::pi * (kx * x + ky * y);
  return p * cplx(std::cos(ph), std::sin(ph));
}

BasisTerm BasisTerm::parse(const std::string& spec) {
  std::istringstream in(spec);
  std::string tok;
  if (!(in >> tok)) throw std::invalid_argument("basis spec: empty string");
  BasisTerm b;
  if (tok == "one") {
    // default term
  } else if (tok == "poly") {
    if (!(in >> b.c0 >> b.cx >> b.cy))
      throw std::invalid_argument("basis spec: poly needs 3 coefficients");
  } else {
    throw std::invalid_argument("basis spec: expected 'one' or 'poly'");
  }
  while (in >> tok) {
    if (tok == "xy") {
      if (!(in >> b.cxy))
        throw std::invalid_argument("basis spec: xy needs a coefficient");
    } else if (tok == "phase") {
      if (!(in >> b.kx >> b.ky))
        throw std::invalid_argument("basis spec: phase needs 2 frequencies");
    } else {
      throw std::invalid_argument("basis spec: unknown token '" + tok + "'");
    }
  }
  return b;
}

std::string BasisTerm::str() const {
  std::ostringstream out;
  out << "poly " << c0 << ' ' << cx << ' ' << cy;
  if (cxy != 0.0) out << " xy " << cxy;
  if (kx != 0.0 || ky != 0.0) out << " phase " << kx << ' ' << ky;
  return out.str();
}

ModelSpace::ModelSpace(int nx, int ny, std::vector<BasisTerm> basis,
                       std::uint64_t seed)
    : nx_(nx), ny_(ny), seed_(seed), basis_(std::move(basis)) {
  if (nx < 1 || ny < 1)
    throw std::domain_error("ModelSpace: grid must be at least 1x1");
  const int k = static_cast<int>(basis_.size());
  if (k < 1) throw std::domain_error("ModelSpace: need at least one basis term");
  if (k > 8) throw std::domain_error("ModelSpace: at most 8 basis terms");
  const int n = nx * ny;
  weights_.assign(n, 1.0 / n);
  values_.assign(k, std::vector<cplx>(n));
  for (int j = 0; j < k; ++j) {
    int c = 0;
    for (int iy = 0; iy < ny; ++iy) {
      const double y = (iy + 0.5) / ny;
      for (int ix = 0; ix < nx; ++ix, ++c) {
        const double x = (ix + 0.5) / nx;
        values_[j][c] = basis_[j].eval(x, y);
      }
    }
  }
  // Gram condition via the real symmetric embedding of the Hermitian Gram.
  std::vector<cplx> gram(k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      cplx acc{0, 0};
      for (int c = 0; c < n; ++c)
        acc += weights_[c] * std::conj(values_[i][c]) * values_[j][c];
      gram[i * k + j] = acc;
    }
  std::vector<double> e(2 * k * 2 * k, 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      e[i * 2 * k + j] = gram[i * k + j].real();
      e[i * 2 * k + (k + j)] = -gram[i * k + j].imag();
      e[(k + i) * 2 * k + j] = gram[i * k + j].imag();
      e[(k + i) * 2 * k + (k + j)] = gram[i * k + j].real();
    }
  const auto ev = sym_eigenvalues(std::move(e), 2 * k);
  const double lo = *std::min_element(ev.begin(), ev.end());
  const double hi = *std::max_element(ev.begin(), ev.end());
  if (!(lo > 1e-12 * hi))
    throw std::domain_error("ModelSpace: basis is numerically dependent");
  gram_condition_ = hi / lo;
}

ModelSpace ModelSpace::default_k1() {
  return ModelSpace(64, 64, {BasisTerm::parse("poly 1 0 0")});
}

ModelSpace ModelSpace::default_k2() {
  return ModelSpace(64, 64,
                    {BasisTerm::parse("poly 1 0.4 0.2 phase 1 -1"),
                     BasisTerm::parse("poly 1 -0.3 0.5 phase 1 1")});
}

std::vector<cplx> qd_values(const ModelSpace& s, const ModelQD& phi) {
  if (static_cast<int>(phi.coeffs.size()) != s.dim())
    throw std::invalid_argument("qd_values: coefficient count != dim");
  std::vector<cplx> out(s.cells(), cplx{0, 0});
  for (int j = 0; j < s.dim(); ++j) {
    const cplx c = phi.coeffs[j];
    if (c == cplx{0, 0}) continue;
    const auto& bj = s.basis_values(j);
    for (int i = 0; i < s.cells(); ++i) out[i] += c * bj[i];
  }
  return out;
}

double l1_norm(const ModelSpace& s, const ModelQD& phi) {
  const auto vals = qd_values(s, phi);
  double total = 0.0;
  for (int c = 0; c < s.cells(); ++c) total += s.weight(c) * std::abs(vals[c]);
  return total;
}

double linf_norm(const ModelBeltrami& mu) {
  double m = 0.0;
  for (const cplx& v : mu.values) m = std::max(m, std::abs(v));
  return m;
}

cplx pairing(const ModelSpace& s, const ModelBeltrami& mu, const ModelQD& phi) {
  if (static_cast<int>(mu.values.size()) != s.cells())
    throw std::invalid_argument("pairing: Beltrami size != cells");
  const auto vals = qd_values(s, phi);
  cplx acc{0, 0};
  for (int c = 0; c < s.cells(); ++c)
    acc += s.weight(c) * mu.values[c] * vals[c];
  return acc;
}

ModelBeltrami teichmuller_beltrami(const ModelSpace& s, const ModelQD& phi,
                                   double scale, const Tolerances& tol) {
  const auto vals = qd_values(s, phi);
  double peak = 0.0;
  for (const cplx& v : vals) peak = std::max(peak, std::abs(v));
  const double floor = tol.zero_floor_rel * peak;
  ModelBeltrami mu;
  mu.values.resize(vals.size());
  for (std::size_t c = 0; c < vals.size(); ++c) {
    const double m = std::abs(vals[c]);
    mu.values[c] = (m > floor && m > 0.0) ? scale * std::conj(vals[c]) / m
                                          : cplx{0, 0};
  }
  return mu;
}

namespace {

// projected gradient ascent on the sphere; updates (u, g) in place
void pga(const DualObjective& obj, std::vector<double>& u, double& g,
         int max_iter, double grad_tol) {
  std::vector<double> grad, trial(u.size());
  g = obj.value_grad(u, grad);
  double alpha = 0.5;
  for (int it = 0; it < max_iter; ++it) {
    const double cu = dot(grad, u);
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] -= cu * u[i];
    const double gn2 = dot(grad, grad);
    if (gn2 < grad_tol * grad_tol) break;
    bool stepped = false;
    while (alpha > 1e-16) {
      for (std::size_t i = 0; i < u.size(); ++i)
        trial[i] = u[i] + alpha * grad[i];
      normalize(trial);
      const double gw = obj.value(trial);
      if (gw > g + 1e-4 * alpha * gn2) {
        u.swap(trial);
        g = obj.value_grad(u, grad);
        alpha = std::min(alpha * 1.5, 4.0);
        stepped = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!stepped) break;
  }
}

}  // namespace

DualNormResult teich_dual_norm(const ModelSpace& s, const ModelBeltrami& mu,
                               const Tolerances& tol) {
  if (static_cast<int>(mu.values.size()) != s.cells())
    throw std::invalid_argument("teich_dual_norm: Beltrami size != cells");
  const int k = s.dim();
  DualObjective obj(s, mu);

  DualNormResult res;
  if (norm2(obj.l) < 1e-300) {
    // zero functional: any unit element attains the value 0
    ModelQD q;
    q.coeffs.assign(k, cplx{0, 0});
    q.coeffs[0] = 1.0;
    const double n = l1_norm(s, q);
    q.coeffs[0] /= n;
    res.value = 0.0;
    res.maximizer = q;
    return res;
  }

  if (k == 1) {
    // one complex coefficient: the sup is attained by phase alignment
    const cplx p(obj.l[0], -obj.l[1]);
    ModelQD unit;
    unit.coeffs = {cplx(1, 0)};
    const double nb = l1_norm(s, unit);
    ModelQD q;
    q.coeffs = {std::conj(p) / cabs(p) / nb};
    res.value = cabs(p) / nb;
    res.maximizer = q;
    return res;
  }

  Rng rng(0xA5C0FFEEull);  // fixed internal stream: calls are deterministic
  // all starts shallow, then the best few to full depth
  std::vector<std::pair<double, std::vector<double>>> pool;
  pool.reserve(tol.dual_starts);
  for (int start = 0; start < tol.dual_starts; ++start) {
    std::vector<double> u(2 * k);
    if (start == 0) {
      u = obj.l;  // the pairing functional itself is an excellent start
    } else {
      for (auto& x : u) x = rng.uniform(-1.0, 1.0);
    }
    if (norm2(u) < 1e-12) {
      u.assign(2 * k, 0.0);
      u[0] = 1.0;
    }
    normalize(u);
    double g;
    pga(obj, u, g, 30, 1e-4);  // localize only; the winners go deep
    pool.emplace_back(g, std::move(u));
  }
  std::sort(pool.begin(), pool.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_u;
  const int deep = std::min<int>(3, static_cast<int>(pool.size()));
  for (int i = 0; i < deep; ++i) {
    double g = pool[i].first;
    std::vector<double> u = pool[i].second;
    pga(obj, u, g, tol.dual_max_iter, tol.dual_grad_tol);
    if (g > best) {
      best = g;
      best_u = std::move(u);
    }
  }
  newton_polish(obj, best_u, best);

  ModelQD q;
  q.coeffs.resize(k);
  for (int j = 0; j < k; ++j) q.coeffs[j] = cplx(best_u[2 * j], best_u[2 * j + 1]);
  const double n = l1_norm(s, q);
  for (auto& c : q.coeffs) c /= n;
  res.value = best;
  res.maximizer = q;
  return res;
}

ModelBeltrami kernel_element(const ModelSpace& s, std::uint64_t seed,
                             const Tolerances& tol) {
  const int k = s.dim();
  const int n = s.cells();
  if (n <= k)
    throw std::domain_error("kernel_element: grid too small to admit a kernel");

  // Hermitian-orthonormal constraint rows conj(w b_j); projecting against
  // them kills all k pairings at once.
  std::vector<std::vector<cplx>> rows(k, std::vector<cplx>(n));
  for (int j = 0; j < k; ++j)
    for (int c = 0; c < n; ++c)
      rows[j][c] = std::conj(s.weight(c) * s.basis_values(j)[c]);
  auto inner = [n](const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx acc{0, 0};
    for (int i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
  };
  for (int j = 0; j < k; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < j; ++i) {
        const cplx c = inner(rows[i], rows[j]);
        for (int t = 0; t < n; ++t) rows[j][t] -= c * rows[i][t];
      }
    const double nn = std::sqrt(inner(rows[j], rows[j]).real());
    if (nn < 1e-300)
      throw std::domain_error("kernel_element: dependent constraints");
    for (auto& v : rows[j]) v /= nn;
  }

  Rng rng(seed);
  for (int attempt = 0; attempt < 16; ++attempt) {
    ModelBeltrami nu;
    nu.values.resize(n);
    for (auto& v : nu.values) v = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < k; ++j) {
        const cplx c = inner(rows[j], nu.values);
        for (int t = 0; t < n; ++t) nu.values[t] -= c * rows[j][t];
      }
    const double m = linf_norm(nu);
    if (m < 1e-8) continue;
    for (auto& v : nu.values) v /= m;
    bool ok = true;
    ModelQD ej;
    ej.coeffs.assign(k, cplx{0, 0});
    for (int j = 0; j < k && ok; ++j) {
      ej.coeffs.assign(k, cplx{0, 0});
      ej.coeffs[j] = 1.0;
      if (std::abs(pairing(s, nu, ej)) > tol.tol_kernel_residual) ok = false;
    }
    if (ok) return nu;
  }
  throw std::runtime_error("kernel_element: projection failed to converge");
}

DerivativeReport derivative_check(const ModelSpace& s, const ModelQD& v0,
                                  double beta, const ModelBeltrami& v,
                                  const Tolerances& tol) {
  if (!(beta > 0.0)) throw std::domain_error("derivative_check: beta <= 0");
  const double n0 = l1_norm(s, v0);
  if (!(n0 > 0.0)) throw std::domain_error("derivative_check: v0 == 0");
  ModelQD alpha0 = v0;
  for (auto& c : alpha0.coeffs) c /= n0;
  const ModelBeltrami mu0 = teichmuller_beltrami(s, alpha0, beta, tol);

  DerivativeReport rep;
  rep.analytic = pairing(s, v, alpha0).real();
  rep.base_norm = teich_dual_norm(s, mu0, tol).value;

  auto shifted = [&](double t) {
    ModelBeltrami m = mu0;
    for (int c = 0; c < s.cells(); ++c) m.values[c] += t * v.values[c];
    return teich_dual_norm(s, m, tol).value;
  };
  bool first = true;
  for (double h : tol.fd_steps) {
    const double fd = (shifted(h) - shifted(-h)) / (2.0 * h);
    const double err = std::abs(fd - rep.analytic);
    if (first || err < rep.abs_error) {
      rep.abs_error = err;
      rep.best_fd = fd;
      rep.best_step = h;
      first = false;
    }
  }
  rep.rel_error = rep.abs_error / std::max(1.0, std::abs(rep.analytic));
  return rep;
}

ModelQD random_qd(const ModelSpace& s, Rng& rng) {
  ModelQD q;
  q.coeffs.resize(s.dim());
  for (auto& c : q.coeffs) c = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return q;
}

ModelBeltrami random_beltrami(const ModelSpace& s, Rng& rng) {
  ModelBeltrami m;
  m.values.resize(s.cells());
  for (auto& v : m.values) v = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return m;
}

}  // namespace trm

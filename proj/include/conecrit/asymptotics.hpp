#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "conecrit/classifier.hpp"
#include "conecrit/grid1d.hpp"
#include "conecrit/params.hpp"
#include "conecrit/quadrature.hpp"
#include "conecrit/spectral.hpp"

namespace conecrit::asym {

enum class ProfileTag { eta1R, etakR, vk, vkR, vstarR, custom };

struct RadialProfile {
  std::vector<double> r, v;
  ProfileTag tag = ProfileTag::custom;
};

enum class ModeKind { power_minus, two_sided_R, star_R };

inline double eta_power_minus(double alpha_minus, double r) { return std::pow(0.5 * r, alpha_minus); }

inline double eta_two_sided(double alpha_minus, double alpha_plus, double R, double r) {
  return (std::pow(r, alpha_plus) - std::pow(r, alpha_minus)) /
         (std::pow(R, alpha_plus) - std::pow(R, alpha_minus));
}

inline double eta_star(double alpha_star, double R, double r) {
  return std::log(r) / std::log(R) * std::pow(r / R, alpha_star);
}

// Samples of the named closed-form radial factors.
inline RadialProfile mode_profile_exterior(const Roots& roots, ModeKind kind, double R,
                                           const std::vector<double>& grid) {
  if (!roots.real()) throw std::invalid_argument("mode_profile_exterior: no real roots");
  if (roots.kind == RootKind::double_root && kind != ModeKind::star_R)
    throw std::invalid_argument(
        "mode_profile_exterior: double indicial root; use the star_R profile");
  if ((kind == ModeKind::two_sided_R || kind == ModeKind::star_R) && !(R > 4.0))
    throw std::invalid_argument("mode_profile_exterior: need R > 4");
  RadialProfile out;
  out.r = grid;
  out.v.reserve(grid.size());
  switch (kind) {
    case ModeKind::power_minus:
      out.tag = ProfileTag::vk;
      for (double r : grid) out.v.push_back(eta_power_minus(roots.lower, r));
      break;
    case ModeKind::two_sided_R:
      out.tag = ProfileTag::vkR;
      for (double r : grid) out.v.push_back(eta_two_sided(roots.lower, roots.upper, R, r));
      break;
    case ModeKind::star_R:
      out.tag = ProfileTag::vstarR;
      for (double r : grid) out.v.push_back(eta_star(roots.star(), R, r));
      break;
  }
  return out;
}

// Smooth bump supported on (lo, hi): exp(-1/(1-x^2)) with x the affine map onto (-1, 1).
inline std::function<double(double)> default_bump(double lo, double hi) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  return [mid, half](double w) {
    const double x = (w - mid) / half;
    if (std::fabs(x) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - x * x));
  };
}

enum class ComparisonKind { lower, lower_critical, upper_R, upper_critical_R };

// Eigenfunction-series comparison function with measured truncation tail.
struct ComparisonFunction {
  spectral::SpectralBasis basis;
  ComparisonKind kind = ComparisonKind::lower;
  double R = 0.0;  // outer radius for the _R kinds
  int truncation = 0;
  double measured_tail = 0.0;
  std::vector<double> coeffs;      // psi_k for k = 1..truncation
  std::vector<Roots> mode_roots;   // alpha_{V,k}^{-+}
  double alpha_star = 0.0, c_star = 1.0;

  double eval(double r, double omega) const {
    double sum = 0.0;
    for (int k = 1; k <= truncation; ++k) {
      const double psi_k = coeffs[k - 1];
      if (psi_k == 0.0) continue;
      double radial = 0.0;
      const Roots& rt = mode_roots[k - 1];
      switch (kind) {
        case ComparisonKind::lower:
          radial = eta_power_minus(rt.lower, r);
          break;
        case ComparisonKind::lower_critical:
          radial = k == 1 ? c_star * std::pow(r, alpha_star) : eta_power_minus(rt.lower, r);
          break;
        case ComparisonKind::upper_R:
          radial = eta_two_sided(rt.lower, rt.upper, R, r);
          break;
        case ComparisonKind::upper_critical_R:
          radial = k == 1 ? eta_star(alpha_star, R, r) : eta_two_sided(rt.lower, rt.upper, R, r);
          break;
      }
      sum += psi_k * radial * basis.phi(k, omega);
    }
    return sum;
  }
};

// Fourier coefficients of psi, truncation chosen so that the measured tail
//   sum_{k>K} |psi_k| * sup|phi_k| * max(radial factor)
// drops below tail_tol.
inline ComparisonFunction build_comparison(const std::function<double(double)>& psi,
                                           const spectral::SpectralBasis& basis,
                                           ComparisonKind kind, double R = 0.0,
                                           double tail_tol = 1e-8, int cap = 512) {
  if (!basis.has_profiles()) throw std::invalid_argument("build_comparison: basis has no modes");
  const bool critical = kind == ComparisonKind::lower_critical || kind == ComparisonKind::upper_critical_R;
  const bool uses_R = kind == ComparisonKind::upper_R || kind == ComparisonKind::upper_critical_R;
  if (uses_R && !(R > 4.0)) throw std::invalid_argument("build_comparison: need R > 4");

  ComparisonFunction cf;
  cf.basis = basis;
  cf.kind = kind;
  cf.R = R;
  cf.alpha_star = 0.5 * (2.0 - double(basis.dim));

  const int kmax = std::min(cap, basis.modes());
  std::vector<double> tail_weight(kmax);
  for (int k = 1; k <= kmax; ++k) {
    cf.coeffs.push_back(basis.integrate_angular(
        [&](double w) { return psi(w) * basis.phi(k, w); }));
    const Roots rt = indicial_roots(basis.dim, 0.0, basis.lambda(k));
    if (!rt.real())
      throw std::invalid_argument("build_comparison: indefinite cross-section (no real mode roots)");
    if (critical && k == 1 && rt.kind != RootKind::double_root)
      throw std::invalid_argument("build_comparison: critical kinds require a double principal root");
    cf.mode_roots.push_back(rt);
    // conservative per-mode bound on the radial factor over the sampled range
    double maxfac = 1.0;
    if (kind == ComparisonKind::lower || kind == ComparisonKind::lower_critical) {
      maxfac = 1.0;  // (r/2)^{alpha_k^-} <= 1 on r >= 2
    } else {
      maxfac = 0.0;
      for (double r : logspace(2.0, R, 48))
        maxfac = std::max(maxfac, std::fabs(rt.kind == RootKind::double_root
                                                ? eta_star(rt.star(), R, r)
                                                : eta_two_sided(rt.lower, rt.upper, R, r)));
    }
    tail_weight[k - 1] = std::fabs(cf.coeffs.back()) * basis.phi_sup(k) * maxfac;
  }
  // smallest truncation meeting the measured tail bound
  std::vector<double> suffix(kmax + 1, 0.0);
  for (int k = kmax; k >= 1; --k) suffix[k - 1] = suffix[k] + tail_weight[k - 1];
  int K = -1;
  for (int k = 1; k <= kmax; ++k) {
    if (suffix[k] <= tail_tol) {
      K = k;
      break;
    }
  }
  if (K < 0) throw std::runtime_error("build_comparison: tail bound unachievable within the mode cap");
  cf.truncation = K;
  cf.measured_tail = suffix[K];
  cf.coeffs.resize(K);
  cf.mode_roots.resize(K);
  cf.c_star = std::pow(2.0, -cf.alpha_star);  // v*(2, omega) = phi_1(omega)
  return cf;
}

// inf over the annulus {R/2 <= r <= R} x Omega' by dense sampling.
template <class F>
double annulus_inf(const F& u, double R, double omega_lo, double omega_hi, int nr = 64, int nw = 33) {
  double m = std::numeric_limits<double>::infinity();
  for (double r : logspace(0.5 * R, R, nr))
    for (int j = 0; j < nw; ++j) {
      const double w = omega_lo + (omega_hi - omega_lo) * double(j + 1) / double(nw + 1);
      m = std::min(m, u(r, w));
    }
  return m;
}

template <class F>
double annulus_sup(const F& u, double R, double omega_lo, double omega_hi, int nr = 64, int nw = 33) {
  double m = -std::numeric_limits<double>::infinity();
  for (double r : logspace(0.5 * R, R, nr))
    for (int j = 0; j < nw; ++j) {
      const double w = omega_lo + (omega_hi - omega_lo) * double(j + 1) / double(nw + 1);
      m = std::max(m, u(r, w));
    }
  return m;
}

enum class EnvelopeRegime { subcritical, critical };

struct EnvelopeReport {
  std::vector<double> radii, infima, ratio_lower, ratio_upper;
  double drift_lower = 0.0, drift_upper = 0.0;  // max consecutive relative change, trailing
  bool lower_ok = true, upper_ok = true;
  std::optional<double> first_violation_R;
};

// Checks c1 R^{alpha^-} <= inf_annulus u <= c2 R^{alpha^+} (subcritical) or
// the R^{alpha*} .. R^{alpha*} log R envelope (critical) with stable constants.
template <class F>
EnvelopeReport two_sided_bound_check(const F& u, EnvelopeRegime regime, const Roots& roots1,
                                     double omega_lo, double omega_hi,
                                     const std::vector<double>& radii, int nr = 64, int nw = 33) {
  if (radii.size() < 2) throw std::invalid_argument("two_sided_bound_check: need >= 2 radii");
  EnvelopeReport rep;
  for (double R : radii) {
    const double m = annulus_inf(u, R, omega_lo, omega_hi, nr, nw);
    rep.radii.push_back(R);
    rep.infima.push_back(m);
    if (regime == EnvelopeRegime::subcritical) {
      rep.ratio_lower.push_back(m / std::pow(R, roots1.lower));
      rep.ratio_upper.push_back(m / std::pow(R, roots1.upper));
    } else {
      rep.ratio_lower.push_back(m / std::pow(R, roots1.star()));
      rep.ratio_upper.push_back(m / (std::pow(R, roots1.star()) * std::log(R)));
    }
  }
  const std::size_t n = rep.radii.size();
  const std::size_t start = n > 4 ? n - 4 : 0;
  for (std::size_t i = start; i + 1 < n; ++i) {
    rep.drift_lower = std::max(rep.drift_lower,
                               std::fabs(rep.ratio_lower[i + 1] / rep.ratio_lower[i] - 1.0));
    rep.drift_upper = std::max(rep.drift_upper,
                               std::fabs(rep.ratio_upper[i + 1] / rep.ratio_upper[i] - 1.0));
  }
  std::vector<double> lx, llo, lhi;
  for (std::size_t i = 0; i < n; ++i) {
    lx.push_back(std::log(rep.radii[i]));
    llo.push_back(std::log(std::max(rep.ratio_lower[i], 1e-300)));
    lhi.push_back(std::log(std::max(rep.ratio_upper[i], 1e-300)));
  }
  const double slope_lo = linear_fit(lx, llo).slope;
  const double slope_hi = linear_fit(lx, lhi).slope;
  rep.lower_ok = slope_lo > -0.02;
  rep.upper_ok = slope_hi < 0.02;
  if (!rep.lower_ok) {
    for (std::size_t i = 0; i < n; ++i)
      if (rep.ratio_lower[i] < 0.5 * rep.ratio_lower[0]) {
        rep.first_violation_R = rep.radii[i];
        break;
      }
  } else if (!rep.upper_ok) {
    for (std::size_t i = 0; i < n; ++i)
      if (rep.ratio_upper[i] > 2.0 * rep.ratio_upper[0]) {
        rep.first_violation_R = rep.radii[i];
        break;
      }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Closed-form solutions of the two-point problem
//   -eta'' - (N-1)/r eta' - C_H/r^2 eta + delta_k^2/r^2 eta = r^{alpha*-2} log^{-sigma}(r),
//   eta(rho) = eta(R) = 0.

// Particular integral for k >= 2 in exponential variables: both improper
// integrals are evaluated after the substitutions t = r e^{+-u}; the infinite
// tail is split at u = 6 ln 10 and the remainder is bounded analytically and
// added as certified error.
inline double eta_particular(double alpha_star, double delta, double sigma, double rho, double r,
                             double quad_tol = 1e-12) {
  const double tr = std::log(r);
  const double cut = 6.0 * std::log(10.0);
  double upper = integrate([&](double u) { return std::exp(-delta * u) * std::pow(tr + u, -sigma); },
                           0.0, cut, quad_tol);
  upper += std::exp(-delta * cut) / (delta * std::pow(tr + cut, sigma));  // certified tail bound
  const double span = tr - std::log(rho);
  const double lower = span <= 0.0
                           ? 0.0
                           : integrate([&](double u) {
                               return std::exp(-delta * u) * std::pow(tr - u, -sigma);
                             }, 0.0, span, quad_tol);
  return std::pow(r, alpha_star) / (2.0 * delta) * (upper + lower);
}

// eta_{k,R} for k >= 2: particular integral plus the homogeneous combination
// pinned to zero boundary values.
inline RadialProfile eta_profile_k(int dim, double delta, double sigma, double rho, double R,
                                   const std::vector<double>& grid) {
  if (!(rho > std::exp(1.0))) throw std::invalid_argument("eta_profile_k: need rho > e");
  if (!(delta > 0.0)) throw std::invalid_argument("eta_profile_k: need delta > 0 (use eta_profile_1)");
  const double alpha_star = 0.5 * (2.0 - double(dim));
  const double am = alpha_star - delta, ap = alpha_star + delta;
  const double eta_rho = eta_particular(alpha_star, delta, sigma, rho, rho);
  const double eta_R = eta_particular(alpha_star, delta, sigma, rho, R);
  const double det = std::pow(R, ap) * std::pow(rho, am) - std::pow(R, am) * std::pow(rho, ap);
  const double A = -(std::pow(R, ap) * eta_rho - std::pow(rho, ap) * eta_R) / det;
  const double B = (std::pow(R, am) * eta_rho - std::pow(rho, am) * eta_R) / det;
  RadialProfile out;
  out.tag = ProfileTag::etakR;
  out.r = grid;
  for (double r : grid)
    out.v.push_back(A * std::pow(r, am) + B * std::pow(r, ap) +
                    eta_particular(alpha_star, delta, sigma, rho, r));
  return out;
}

// k = 1 (delta = 0), sigma = 1: polylog closed form. The boundary conditions
// force the particular term -log(r) loglog(r); the independent finite
// difference oracle below doubles as the verification of this expression.
inline double eta1R_value(int dim, double rho, double R, double r) {
  const double alpha_star = 0.5 * (2.0 - double(dim));
  const double LR = std::log(R), Lr = std::log(rho);
  const double llR = std::log(LR), llr = std::log(Lr);
  const double A = LR * Lr * (llr - llR) / (LR - Lr);
  const double B = (LR * llR - Lr * llr) / (LR - Lr);
  const double t = std::log(r);
  return std::pow(r, alpha_star) * (A + B * t - t * std::log(t));
}

inline RadialProfile eta_profile_1(int dim, double rho, double R, const std::vector<double>& grid) {
  if (!(rho > std::exp(1.0))) throw std::invalid_argument("eta_profile_1: need rho > e");
  RadialProfile out;
  out.tag = ProfileTag::eta1R;
  out.r = grid;
  for (double r : grid) out.v.push_back(eta1R_value(dim, rho, R, r));
  return out;
}

// Dispatcher mirroring the per-mode construction: sigma is pinned to 1 for
// the blow-up mode k = 1.
inline RadialProfile eta_profiles(int dim, const spectral::SpectralBasis& basis, double rho, double R,
                                  double sigma, int k, std::size_t n = 513) {
  const std::vector<double> grid = logspace(rho, R, n);
  if (k == 1) {
    if (sigma != 1.0)
      throw std::invalid_argument("eta_profiles: the k = 1 closed form is normalized to sigma = 1");
    return eta_profile_1(dim, rho, R, grid);
  }
  const double delta = std::sqrt(basis.lambda(k) - basis.lambda(1));
  return eta_profile_k(dim, delta, sigma, rho, R, grid);
}

// ---------------------------------------------------------------------------
// Independent finite-difference oracle for the radial two-point problem
//   -eta'' - (N-1)/r eta' + (q / r^2) eta = rhs(r), eta(rho) = a, eta(R) = b.
// Solved in t = log r after removing the first-order term exactly
// (zeta = r^{(N-2)/2} eta), then Numerov on the uniform t-grid.
inline RadialProfile radial_bvp_oracle(int dim, double q, const std::function<double(double)>& rhs,
                                       double rho, double R, double bc_lo, double bc_hi,
                                       std::size_t n) {
  if (n < 64) throw std::invalid_argument("radial_bvp_oracle: need at least 64 nodes");
  if (!(R > rho) || !(rho > 0.0)) throw std::invalid_argument("radial_bvp_oracle: bad interval");
  const double beta = 0.5 * (double(dim) - 2.0);
  const double t0 = std::log(rho), t1 = std::log(R);
  const double h = (t1 - t0) / double(n - 1);
  const double Q = beta * beta + q;
  std::vector<double> t(n), G(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = t0 + h * double(i);
    const double r = std::exp(t[i]);
    G[i] = std::exp((beta + 2.0) * t[i]) * rhs(r);
  }
  const std::size_t m = n - 2;
  const double diag_v = 2.0 / (h * h) + 10.0 * Q / 12.0;
  const double off_v = -1.0 / (h * h) + Q / 12.0;
  std::vector<double> lo(m - 1, off_v), di(m, diag_v), up(m - 1, off_v), b(m);
  const double z_lo = std::pow(rho, beta) * bc_lo;
  const double z_hi = std::pow(R, beta) * bc_hi;
  for (std::size_t i = 0; i < m; ++i) {
    b[i] = (G[i] + 10.0 * G[i + 1] + G[i + 2]) / 12.0;
  }
  b[0] -= off_v * z_lo;
  b[m - 1] -= off_v * z_hi;
  std::vector<double> zeta_int = solve_tridiagonal(lo, di, up, b);
  RadialProfile out;
  out.tag = ProfileTag::custom;
  out.r.resize(n);
  out.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.r[i] = std::exp(t[i]);
    const double z = i == 0 ? z_lo : (i == n - 1 ? z_hi : zeta_int[i - 1]);
    out.v[i] = std::exp(-beta * t[i]) * z;
  }
  return out;
}

}  // namespace conecrit::asym

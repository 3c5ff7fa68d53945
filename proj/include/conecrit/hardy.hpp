#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "conecrit/grid1d.hpp"
#include "conecrit/params.hpp"
#include "conecrit/quadrature.hpp"
#include "conecrit/spectral.hpp"

namespace conecrit::hardy {

// Radial factor of a separated test function: finitely many smooth pieces,
// zero outside their union. Derivatives are supplied analytically.
struct RadialPiece {
  double lo = 0, hi = 0;
  std::function<double(double)> value, deriv;
};

struct PiecewiseRadial {
  std::vector<RadialPiece> pieces;  // sorted, non-overlapping

  double support_lo() const { return pieces.empty() ? 0.0 : pieces.front().lo; }
  double support_hi() const { return pieces.empty() ? 0.0 : pieces.back().hi; }

  double value(double r) const {
    for (const auto& p : pieces)
      if (r >= p.lo && r <= p.hi) return p.value(r);
    return 0.0;
  }
  double deriv(double r) const {
    for (const auto& p : pieces)
      if (r >= p.lo && r <= p.hi) return p.deriv(r);
    return 0.0;
  }

  void validate() const {
    if (pieces.empty()) throw std::invalid_argument("PiecewiseRadial: empty profile");
    double cursor = 0.0;
    for (const auto& p : pieces) {
      if (!(p.hi > p.lo) || p.lo < cursor)
        throw std::invalid_argument("PiecewiseRadial: pieces must be sorted and disjoint");
      if (!std::isfinite(p.hi)) throw std::invalid_argument("PiecewiseRadial: non-integrable tail");
      cursor = p.hi;
    }
  }
};

// The Lipschitz cut-off: 0 outside (rho, R^2]; r - rho on (rho, rho+1];
// 1 on (rho+1, R]; log(R^2/r)/log(R) on (R, R^2].
inline PiecewiseRadial cutoff_family(double rho, double R) {
  if (!(rho >= 1.0)) throw std::invalid_argument("cutoff_family: need rho >= 1");
  if (!(R >= 2.0 * rho + 2.0)) throw std::invalid_argument("cutoff_family: need R >= 2*rho + 2");
  PiecewiseRadial out;
  out.pieces.push_back({rho, rho + 1.0, [rho](double r) { return r - rho; }, [](double) { return 1.0; }});
  out.pieces.push_back({rho + 1.0, R, [](double) { return 1.0; }, [](double) { return 0.0; }});
  const double logR = std::log(R);
  out.pieces.push_back({R, R * R,
                        [R, logR](double r) { return std::log(R * R / r) / logR; },
                        [logR](double r) { return -1.0 / (r * logR); }});
  return out;
}

// Multiply a piecewise profile by a globally smooth factor.
inline PiecewiseRadial multiply(const PiecewiseRadial& base, std::function<double(double)> f,
                                std::function<double(double)> fprime) {
  PiecewiseRadial out;
  for (const auto& p : base.pieces) {
    auto v = p.value;
    auto d = p.deriv;
    out.pieces.push_back({p.lo, p.hi,
                          [v, f](double r) { return v(r) * f(r); },
                          [v, d, f, fprime](double r) { return d(r) * f(r) + v(r) * fprime(r); }});
  }
  return out;
}

// Angular constants of a separated factor b(omega):
//   mass = int b^2, dirichlet = int |grad b|^2, potential = int V b^2.
struct AngularFactor {
  double mass = 1.0;
  double dirichlet = 0.0;
  double potential = 0.0;
};

// Factor built from a finite eigenmode mixture b = sum a_k phi_{V,k}.
inline AngularFactor mixture_factor(const spectral::SpectralBasis& basis,
                                    const std::vector<double>& coeffs) {
  if (coeffs.empty() || int(coeffs.size()) > basis.modes())
    throw std::invalid_argument("mixture_factor: bad coefficient count");
  AngularFactor f;
  f.mass = 0.0;
  double energy = 0.0;  // int |grad b|^2 - int V b^2
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    f.mass += coeffs[k] * coeffs[k];
    energy += coeffs[k] * coeffs[k] * basis.lambda(int(k) + 1);
  }
  if (basis.potential) {
    f.potential = basis.integrate_angular([&](double w) {
      double b = 0.0;
      for (std::size_t k = 0; k < coeffs.size(); ++k) b += coeffs[k] * basis.phi(int(k) + 1, w);
      return basis.potential_at(w) * b * b;
    });
  }
  f.dirichlet = energy + f.potential;
  return f;
}

struct FormBreakdown {
  double dirichlet_term = 0;
  double potential_term = 0;
  double hardy_term = 0;
  double log_term = 0;
  double total = 0;
};

namespace detail {

template <class F>
double integrate_piecewise(const PiecewiseRadial& g, const F& integrand, double tol) {
  double sum = 0.0;
  for (const auto& p : g.pieces) {
    // nudge off the piece edges: products like theta/sqrt(log r) are 0*inf there
    const double lo = p.lo * (1.0 + 1e-13);
    const double hi = p.hi * (1.0 - 1e-13);
    if (hi > lo) sum += integrate_radial([&](double r) { return integrand(p, r); }, lo, hi, tol);
  }
  return sum;
}

}  // namespace detail

// The four integrals of the (sharpened) quadratic form for a separated test
// function u = g(r) b(omega); everything reduces to 1-d radial quadrature.
//   total = dirichlet - potential - mu * hardy - eps * log.
inline FormBreakdown form_eval(const PiecewiseRadial& g, const AngularFactor& ang, int dim,
                               double mu, double eps, double quad_tol = 1e-11) {
  g.validate();
  const double nm1 = double(dim) - 1.0;
  const double nm3 = double(dim) - 3.0;
  FormBreakdown out;
  const double grad_r = detail::integrate_piecewise(
      g, [&](const RadialPiece& p, double r) {
        const double d = p.deriv(r);
        return d * d * std::pow(r, nm1);
      }, quad_tol);
  const double sq = detail::integrate_piecewise(
      g, [&](const RadialPiece& p, double r) {
        const double v = p.value(r);
        return v * v * std::pow(r, nm3);
      }, quad_tol);
  const double sq_log = detail::integrate_piecewise(
      g, [&](const RadialPiece& p, double r) {
        const double v = p.value(r);
        if (v == 0.0) return 0.0;
        const double t = std::log(r);
        return v * v * std::pow(r, nm3) / (t * t);
      }, quad_tol);
  out.dirichlet_term = grad_r * ang.mass + sq * ang.dirichlet;
  out.potential_term = sq * ang.potential;
  out.hardy_term = sq * ang.mass;
  out.log_term = sq_log * ang.mass;
  out.total = out.dirichlet_term - out.potential_term - mu * out.hardy_term - eps * out.log_term;
  return out;
}

// ---------------------------------------------------------------------------
// Optimality sweeps for the sharpened inequality. The test family is
// r^{alpha*} log^{1/2}(r) phi_{V,1} (log_corrected) or r^{alpha*} phi_{V,1}
// (power_only), cut off by cutoff_family.

enum class SweepCase { log_corrected, power_only };

struct SweepReport {
  std::vector<double> radii, totals;
  double fitted_rate = 0.0;  // -(slope of totals against loglog R), trailing window
  std::optional<double> first_negative_R;
};

inline SweepReport sharpness_sweep(int dim, double lambda_v1, double rho, double mu, double eps,
                                   const std::vector<double>& radii, SweepCase which,
                                   double quad_tol = 1e-11) {
  if (radii.size() < 4) throw std::invalid_argument("sharpness_sweep: need at least 4 radii");
  const double alpha_star = 0.5 * (2.0 - double(dim));
  AngularFactor ang;  // phi_{V,1} normalized: mass 1, energy lambda_{V,1}
  ang.mass = 1.0;
  ang.dirichlet = lambda_v1;
  ang.potential = 0.0;

  SweepReport rep;
  for (double R : radii) {
    const PiecewiseRadial theta = cutoff_family(rho, R);
    PiecewiseRadial g;
    if (which == SweepCase::log_corrected) {
      g = multiply(theta,
                   [alpha_star](double r) {
                     return std::pow(r, alpha_star) * std::sqrt(std::log(r));
                   },
                   [alpha_star](double r) {
                     const double t = std::log(r);
                     return std::pow(r, alpha_star - 1.0) *
                            (alpha_star * std::sqrt(t) + 0.5 / std::sqrt(t));
                   });
    } else {
      g = multiply(theta, [alpha_star](double r) { return std::pow(r, alpha_star); },
                   [alpha_star](double r) { return alpha_star * std::pow(r, alpha_star - 1.0); });
    }
    const FormBreakdown fb = form_eval(g, ang, dim, mu, eps, quad_tol);
    rep.radii.push_back(R);
    rep.totals.push_back(fb.total);
    if (!rep.first_negative_R && fb.total < 0.0) rep.first_negative_R = R;
  }
  // trailing linear fit of totals against loglog R
  const std::size_t n = rep.radii.size();
  const std::size_t start = n > 4 ? n - 4 : 0;
  std::vector<double> xs, ys;
  for (std::size_t i = start; i < n; ++i) {
    xs.push_back(std::log(std::log(rep.radii[i])));
    ys.push_back(rep.totals[i]);
  }
  rep.fitted_rate = -linear_fit(xs, ys).slope;
  return rep;
}

// ---------------------------------------------------------------------------
// Ground-state identity: for phi = h(r) b(omega) > 0 with
// (-lap - W) phi = f_rad(r) b(omega), W = (V + kappa)/r^2 + eps/(r^2 log^2 r),
// and u = g(r) b(omega) compactly supported,
//   E_W(u,u) = int |grad(u/phi)|^2 phi^2 + int u^2 f/phi.

struct GroundStateReport {
  double lhs = 0, rhs = 0, gap = 0;
};

inline GroundStateReport ground_state_identity(
    const PiecewiseRadial& g, const std::function<double(double)>& h,
    const std::function<double(double)>& h_deriv,
    const std::function<double(double)>& f_over_phi,  // f_rad / h; pass {} for f = 0
    double angular_mass, double angular_energy,       // int b^2; int(|grad b|^2 - V b^2)
    int dim, double kappa, double eps_log, double quad_tol = 1e-11) {
  g.validate();
  // positivity of phi on the support
  for (const auto& p : g.pieces)
    for (int i = 0; i <= 16; ++i) {
      const double r = p.lo + (p.hi - p.lo) * i / 16.0;
      if (!(h(r) > 0.0))
        throw std::invalid_argument("ground_state_identity: phi not positive on the support");
    }
  const double nm1 = double(dim) - 1.0;
  const double nm3 = double(dim) - 3.0;
  const double grad_r = detail::integrate_piecewise(
      g, [&](const RadialPiece& p, double r) {
        const double d = p.deriv(r);
        return d * d * std::pow(r, nm1);
      }, quad_tol);
  const double sq = detail::integrate_piecewise(
      g, [&](const RadialPiece& p, double r) {
        const double v = p.value(r);
        return v * v * std::pow(r, nm3);
      }, quad_tol);
  const double sq_log = detail::integrate_piecewise(
      g, [&](const RadialPiece& p, double r) {
        const double v = p.value(r);
        if (v == 0.0) return 0.0;
        const double t = std::log(r);
        return v * v * std::pow(r, nm3) / (t * t);
      }, quad_tol);
  GroundStateReport rep;
  rep.lhs = grad_r * angular_mass + sq * (angular_energy - kappa * angular_mass) -
            eps_log * sq_log * angular_mass;
  const double quotient = detail::integrate_piecewise(
      g, [&](const RadialPiece& p, double r) {
        const double num = p.deriv(r) * h(r) - p.value(r) * h_deriv(r);
        const double q = num / h(r);
        return q * q * std::pow(r, nm1);
      }, quad_tol);
  double source = 0.0;
  if (f_over_phi) {
    source = detail::integrate_piecewise(
        g, [&](const RadialPiece& p, double r) {
          const double v = p.value(r);
          return v * v * f_over_phi(r) * std::pow(r, nm1);
        }, quad_tol);
  }
  rep.rhs = quotient * angular_mass + source * angular_mass;
  rep.gap = std::fabs(rep.lhs - rep.rhs) / std::max({std::fabs(rep.lhs), std::fabs(rep.rhs), 1e-30});
  return rep;
}

// Barta-type check: inf over interior samples of (-lap b - V b)/b minus the
// principal eigenvalue. Nonpositive up to quadrature noise, zero at b = phi1.
inline double barta_check(const spectral::AngularProfile& profile,
                          const std::function<double(double)>& V, double lambda_v1,
                          int samples = 2048) {
  if (profile.constant) {
    const double b = profile.value(0.0);
    const double ratio = (-profile.laplace(0.0) - (V ? V(0.0) : 0.0) * b) / b;
    return ratio - lambda_v1;
  }
  double inf = std::numeric_limits<double>::infinity();
  for (int i = 1; i < samples; ++i) {
    const double w =
        profile.omega_lo + (profile.omega_hi - profile.omega_lo) * double(i) / double(samples);
    const double b = profile.value(w);
    if (!(b > 0.0)) continue;
    const double ratio = (-profile.laplace(w) - (V ? V(w) : 0.0) * b) / b;
    inf = std::min(inf, ratio);
  }
  return inf - lambda_v1;
}

}  // namespace conecrit::hardy

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace conecrit {

namespace detail {

inline double simpson(double fa, double fm, double fb, double h) {
  return (h / 6.0) * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_step(const F& f, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || (std::isfinite(delta) && std::fabs(delta) <= 15.0 * tol))
    return left + right + (std::isfinite(delta) ? delta / 15.0 : 0.0);
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson on [a,b]. `tol` is relative: it is scaled by a coarse L1
// estimate of the integrand, so cancellation inside the integral cannot force
// unbounded refinement.
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-11, int max_depth = 36) {
  if (a == b) return 0.0;
  double l1 = 0.0;
  const int probes = 64;
  const double h = (b - a) / probes;
  for (int i = 0; i <= probes; ++i) {
    const double v = f(a + h * i);
    if (std::isfinite(v)) l1 += std::fabs(v) * (i == 0 || i == probes ? 0.5 : 1.0);
  }
  l1 *= std::fabs(h);
  const double abs_tol = tol * std::max(l1, 1e-30);
  const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  const double whole = detail::simpson(fa, fm, fb, b - a);
  return detail::adaptive_step(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

// Radial integrals over wide ranges: substitute r = e^t so geometric structure
// is resolved uniformly. Integrates f(r) dr over [a,b], a > 0.
template <class F>
double integrate_radial(const F& f, double a, double b, double tol = 1e-11) {
  if (!(a > 0.0)) throw std::invalid_argument("integrate_radial: need a > 0");
  if (a == b) return 0.0;
  return integrate([&](double t) {
    const double r = std::exp(t);
    return f(r) * r;
  }, std::log(a), std::log(b), tol);
}

// Same, split at interior breakpoints (kinks of piecewise integrands).
template <class F>
double integrate_radial_segmented(const F& f, std::vector<double> breaks, double tol = 1e-11) {
  if (breaks.size() < 2) throw std::invalid_argument("integrate_radial_segmented: need >=2 breakpoints");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i]))
      throw std::invalid_argument("integrate_radial_segmented: breakpoints must increase");
    total += integrate_radial(f, breaks[i], breaks[i + 1], tol);
  }
  return total;
}

// Composite Simpson over samples on a uniform grid (even number of intervals;
// a trapezoid cleanup handles an odd trailing interval).
inline double composite_simpson(const std::vector<double>& values, double h) {
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("composite_simpson: need >=2 samples");
  double sum = 0.0;
  std::size_t last = (n - 1) % 2 == 0 ? n - 1 : n - 2;
  for (std::size_t i = 0; i + 2 <= last; i += 2)
    sum += (h / 3.0) * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
  if (last != n - 1) sum += 0.5 * h * (values[n - 2] + values[n - 1]);
  return sum;
}

}  // namespace conecrit

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace conecrit {

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least 2 nodes");
  std::vector<double> x(n);
  const double h = (b - a) / double(n - 1);
  for (std::size_t i = 0; i < n; ++i) x[i] = a + h * double(i);
  x.back() = b;
  return x;
}

// Geometrically spaced nodes, a and b included.
inline std::vector<double> logspace(double a, double b, std::size_t n) {
  if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("logspace: need 0 < a < b");
  std::vector<double> x = linspace(std::log(a), std::log(b), n);
  for (double& v : x) v = std::exp(v);
  x.front() = a;
  x.back() = b;
  return x;
}

// Tridiagonal solve (Thomas). lower/upper have size n-1. Overwrites nothing.
inline std::vector<double> solve_tridiagonal(const std::vector<double>& lower,
                                             const std::vector<double>& diag,
                                             const std::vector<double>& upper,
                                             std::vector<double> rhs) {
  const std::size_t n = diag.size();
  if (lower.size() + 1 != n || upper.size() + 1 != n || rhs.size() != n)
    throw std::invalid_argument("solve_tridiagonal: size mismatch");
  std::vector<double> c(n - 1), d(diag);
  for (std::size_t i = 1; i < n; ++i) {
    if (d[i - 1] == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");
    const double m = lower[i - 1] / d[i - 1];
    d[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  if (d[n - 1] == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - upper[i] * x[i + 1]) / d[i];
  (void)c;
  return x;
}

// Monotone-preserving cubic interpolant (Fritsch-Carlson slopes).
class Pchip {
 public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("Pchip: need >=2 matched nodes");
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (!(x_[i + 1] > x_[i])) throw std::invalid_argument("Pchip: nodes must increase");
    m_.resize(n);
    std::vector<double> d(n - 1), h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      d[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    m_[0] = d[0];
    m_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (d[i - 1] * d[i] <= 0.0) {
        m_[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
      }
    }
    // clamp endpoint slopes (Fritsch-Carlson end treatment)
    auto clamp_end = [](double m, double d0, double d1) {
      if (d0 == 0.0 || m * d0 < 0.0) return 0.0;
      if (d1 * d0 < 0.0 && std::fabs(m) > 3.0 * std::fabs(d0)) return 3.0 * d0;
      return m;
    };
    m_[0] = clamp_end(((2.0 * h[0] + (n > 2 ? h[1] : h[0])) * d[0] -
                       h[0] * (n > 2 ? d[1] : d[0])) /
                          (h[0] + (n > 2 ? h[1] : h[0])),
                      d[0], n > 2 ? d[1] : d[0]);
    m_[n - 1] = clamp_end(((2.0 * h[n - 2] + (n > 2 ? h[n - 3] : h[n - 2])) * d[n - 2] -
                           h[n - 2] * (n > 2 ? d[n - 3] : d[n - 2])) /
                              (h[n - 2] + (n > 2 ? h[n - 3] : h[n - 2])),
                          d[n - 2], n > 2 ? d[n - 3] : d[n - 2]);
  }

  double operator()(double xq) const { return eval(xq).first; }
  double derivative(double xq) const { return eval(xq).second; }

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::pair<double, double> eval(double xq) const {
    const std::size_t n = x_.size();
    if (xq <= x_.front()) xq = x_.front();
    if (xq >= x_.back()) xq = x_.back();
    std::size_t i = std::upper_bound(x_.begin(), x_.end(), xq) - x_.begin();
    if (i > 0) --i;
    if (i >= n - 1) i = n - 2;
    const double h = x_[i + 1] - x_[i];
    const double t = (xq - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    const double v = h00 * y_[i] + h * h10 * m_[i] + h01 * y_[i + 1] + h * h11 * m_[i + 1];
    const double dh00 = 6 * t2 - 6 * t, dh10 = 3 * t2 - 4 * t + 1;
    const double dh01 = -6 * t2 + 6 * t, dh11 = 3 * t2 - 2 * t;
    const double dv = (dh00 * y_[i] + h * dh10 * m_[i] + dh01 * y_[i + 1] + h * dh11 * m_[i + 1]) / h;
    return {v, dv};
  }

  std::vector<double> x_, y_, m_;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("linear_fit: need >=2 matched points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = double(n) * sxx - sx * sx;
  if (det == 0.0) throw std::runtime_error("linear_fit: degenerate abscissae");
  LinearFit f;
  f.slope = (double(n) * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / double(n);
  return f;
}

}  // namespace conecrit

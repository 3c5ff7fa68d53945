#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "conecrit/grid1d.hpp"
#include "conecrit/params.hpp"
#include "conecrit/quadrature.hpp"

namespace conecrit::spectral {

// Surface area of S^{n-1}.
inline double sphere_area(int n) {
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

// Dirichlet eigenpairs of -lap_omega (or -lap_omega - V) on the cross-section.
// Normalization: integral of phi_k^2 over Omega equals 1; phi_1 > 0 inside.
struct SpectralBasis {
  int dim = 2;
  ConeSpec cone;
  double omega_lo = 0.0;   // angular coordinate range used for quadrature
  double omega_hi = 0.0;   // (polar angle for caps, arc-length for N=2 arcs)
  bool constant_modes = false;  // boundaryless cross-section, phi_1 constant
  std::vector<double> lambdas;
  std::vector<std::function<double(double)>> phi_fns;
  std::vector<double> sup_norms;
  std::function<double(double)> potential;   // V(omega); empty means V == 0
  std::function<double(double)> phi1_deriv;  // d phi_1 / d omega where available
  int grid_nodes = 4096;

  int modes() const { return int(lambdas.size()); }
  bool has_profiles() const { return !phi_fns.empty(); }

  double lambda(int k) const {
    check_mode(k);
    return lambdas[k - 1];
  }
  double phi(int k, double omega) const {
    check_mode(k);
    if (!has_profiles()) throw std::runtime_error("SpectralBasis: no eigenfunctions (tabulated lambda1)");
    return phi_fns[k - 1](omega);
  }
  double phi_sup(int k) const {
    check_mode(k);
    if (!has_profiles()) throw std::runtime_error("SpectralBasis: no eigenfunctions (tabulated lambda1)");
    return sup_norms[k - 1];
  }
  double potential_at(double omega) const { return potential ? potential(omega) : 0.0; }

  // Weight of the cross-section measure in the 1-d angular coordinate.
  double measure_weight(double omega) const {
    if (constant_modes || omega_hi <= omega_lo) return 1.0;
    if (dim == 2) return 1.0;
    return sphere_area(dim - 1) * std::pow(std::sin(omega), dim - 2);
  }

  // integral over Omega of f(omega) d omega.
  double integrate_angular(const std::function<double(double)>& f) const {
    if (constant_modes) return area() * f(0.0);
    const int m = grid_nodes;
    const double h = (omega_hi - omega_lo) / m;
    std::vector<double> vals(m + 1);
    for (int i = 0; i <= m; ++i) {
      const double w = omega_lo + h * i;
      vals[i] = f(w) * measure_weight(w);
    }
    return composite_simpson(vals, h);
  }

  double area() const {
    if (constant_modes) {
      if (dim == 2) return 2.0 * kPi;
      return sphere_area(dim);
    }
    return integrate_angular([](double) { return 1.0; });
  }

 private:
  void check_mode(int k) const {
    if (k < 1 || k > modes()) throw std::out_of_range("SpectralBasis: mode index out of range");
  }
};

inline SpectralBasis full_sphere_basis(int dim) {
  SpectralBasis b;
  b.dim = dim;
  b.cone = ConeSpec::full_sphere();
  b.constant_modes = true;
  b.lambdas = {0.0};
  const double a = dim == 2 ? 2.0 * kPi : sphere_area(dim);
  const double c = 1.0 / std::sqrt(a);
  b.phi_fns = {[c](double) { return c; }};
  b.sup_norms = {c};
  return b;
}

inline SpectralBasis tabulated_basis(int dim, double lambda1) {
  if (!(lambda1 >= 0.0)) throw std::invalid_argument("tabulated_basis: lambda1 must be >= 0");
  SpectralBasis b;
  b.dim = dim;
  b.cone = ConeSpec::tabulated(lambda1);
  b.lambdas = {lambda1};
  return b;
}

// N = 2 arcs: lambda_k = (k*pi/theta0)^2, phi_k = sqrt(2/theta0) sin(k*pi*w/theta0).
inline SpectralBasis eigen_arc(double theta0, int count) {
  if (!(theta0 > 0.0) || !(theta0 <= 2.0 * kPi))
    throw std::invalid_argument("eigen_arc: theta0 must lie in (0, 2*pi]");
  if (count < 1) throw std::invalid_argument("eigen_arc: need count >= 1");
  if (theta0 == 2.0 * kPi) {
    if (count > 1)
      throw std::invalid_argument("eigen_arc: only the principal mode exists in closed form on the full circle");
    SpectralBasis b = full_sphere_basis(2);
    b.cone = ConeSpec::arc(theta0);
    return b;
  }
  SpectralBasis b;
  b.dim = 2;
  b.cone = ConeSpec::arc(theta0);
  b.omega_lo = 0.0;
  b.omega_hi = theta0;
  const double amp = std::sqrt(2.0 / theta0);
  for (int k = 1; k <= count; ++k) {
    const double kk = k * kPi / theta0;
    b.lambdas.push_back(kk * kk);
    b.phi_fns.push_back([amp, kk](double w) { return amp * std::sin(kk * w); });
    b.sup_norms.push_back(amp);
  }
  return b;
}

// Same arc eigenfunctions with the spectrum shifted by a constant potential
// V == shift (exact; used where stacking solver error under series truncation
// would be wasteful).
inline SpectralBasis arc_basis_shifted(double theta0, double shift, int count) {
  SpectralBasis b = eigen_arc(theta0, count);
  for (double& l : b.lambdas) l -= shift;
  b.potential = [shift](double) { return shift; };
  return b;
}

namespace detail {

struct ShootResult {
  double end_value;
  std::vector<double> theta, value, deriv;
};

// RK4 pass over -phi'' - (N-2) cot(theta) phi' = lambda phi with a regular
// series start near the pole.
inline ShootResult cap_shoot(int dim, double theta0, double lambda, int steps, bool record) {
  const double h = theta0 / steps;
  double th = h;
  double phi = 1.0 - lambda * h * h / (2.0 * (dim - 1));
  double dphi = -lambda * h / (dim - 1);
  ShootResult out;
  if (record) {
    out.theta.reserve(steps + 1);
    out.value.reserve(steps + 1);
    out.deriv.reserve(steps + 1);
    out.theta.push_back(0.0);
    out.value.push_back(1.0);
    out.deriv.push_back(0.0);
    out.theta.push_back(th);
    out.value.push_back(phi);
    out.deriv.push_back(dphi);
  }
  auto rhs = [dim, lambda](double t, double p, double dp) {
    return -(double(dim) - 2.0) / std::tan(t) * dp - lambda * p;
  };
  for (int i = 1; i < steps; ++i) {
    const double k1p = dphi, k1d = rhs(th, phi, dphi);
    const double k2p = dphi + 0.5 * h * k1d, k2d = rhs(th + 0.5 * h, phi + 0.5 * h * k1p, dphi + 0.5 * h * k1d);
    const double k3p = dphi + 0.5 * h * k2d, k3d = rhs(th + 0.5 * h, phi + 0.5 * h * k2p, dphi + 0.5 * h * k2d);
    const double k4p = dphi + h * k3d, k4d = rhs(th + h, phi + h * k3p, dphi + h * k3d);
    phi += (h / 6.0) * (k1p + 2 * k2p + 2 * k3p + k4p);
    dphi += (h / 6.0) * (k1d + 2 * k2d + 2 * k3d + k4d);
    th += h;
    if (record) {
      out.theta.push_back(th);
      out.value.push_back(phi);
      out.deriv.push_back(dphi);
    }
  }
  out.end_value = phi;
  return out;
}

// Smallest generalized eigenvalue of the conservative FD discretization,
// located by Sturm bisection (count of negative LDL^T pivots of K - lambda W).
inline double cap_fd_lambda1(int dim, double theta0, int cells) {
  const double h = theta0 / cells;
  auto face_w = [&](int i) { return std::pow(std::sin(i * h), dim - 2); };
  auto cell_w = [&](int i) { return std::pow(std::sin((i + 0.5) * h), dim - 2); };
  std::vector<double> kd(cells), ko(cells - 1), wd(cells);
  for (int i = 0; i < cells; ++i) {
    const double wl = face_w(i);
    const double wr = face_w(i + 1);
    kd[i] = (wl + (i == cells - 1 ? 2.0 * wr : wr)) / h;
    if (i < cells - 1) ko[i] = -wr / h;
    wd[i] = cell_w(i) * h;
  }
  auto count_below = [&](double lam) {
    int neg = 0;
    double d = kd[0] - lam * wd[0];
    if (d < 0) ++neg;
    for (int i = 1; i < cells; ++i) {
      const double od = ko[i - 1];
      double piv = d;
      if (piv == 0.0) piv = 1e-300;
      d = (kd[i] - lam * wd[i]) - od * od / piv;
      if (d < 0) ++neg;
    }
    return neg;
  };
  double hi = 4.0 * (dim - 1) * std::max(1.0, (kPi / theta0) * (kPi / theta0));
  int guard = 0;
  while (count_below(hi) < 1) {
    hi *= 2.0;
    if (++guard > 60) throw std::runtime_error("eigen_cap: FD bracketing failed to find lambda1");
  }
  double lo = 0.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (count_below(mid) >= 1 ? hi : lo) = mid;
    if (hi - lo < 1e-9 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

// Principal Dirichlet eigenpair of the Laplace-Beltrami operator on an
// axisymmetric cap {polar angle < theta0} of S^{N-1}, N >= 3. FD bracket,
// then shooting refined by bisection.
inline SpectralBasis eigen_cap(int dim, double theta0, int grid_nodes = 4096) {
  if (dim < 3) throw std::invalid_argument("eigen_cap: need N >= 3");
  if (!(theta0 > 0.0) || !(theta0 < kPi))
    throw std::invalid_argument("eigen_cap: theta0 must lie in (0, pi)");
  const double lam_fd = detail::cap_fd_lambda1(dim, theta0, grid_nodes);
  auto f = [&](double lam) { return detail::cap_shoot(dim, theta0, lam, grid_nodes, false).end_value; };
  double half_width = std::max(1e-3 * lam_fd, 1e-3);
  double lo = lam_fd - half_width, hi = lam_fd + half_width;
  double flo = f(lo), fhi = f(hi);
  int guard = 0;
  while (flo * fhi > 0.0) {
    half_width *= 2.0;
    lo = std::max(0.0, lam_fd - half_width);
    hi = lam_fd + half_width;
    flo = f(lo);
    fhi = f(hi);
    if (++guard > 10) {
      std::ostringstream msg;
      msg << "eigen_cap: eigenvalue search did not converge; FD estimate " << lam_fd
          << ", bracket [" << lo << ", " << hi << "] with endpoint values (" << flo << ", "
          << fhi << ")";
      throw std::runtime_error(msg.str());
    }
  }
  for (int it = 0; it < 100 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if (flo * fm < 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  const double lambda1 = 0.5 * (lo + hi);

  auto prof = detail::cap_shoot(dim, theta0, lambda1, grid_nodes, true);
  prof.value.back() = 0.0;  // Dirichlet end, kill the bisection remainder
  // normalize: integral over the cap of phi^2 = 1
  const double ring = sphere_area(dim - 1);
  std::vector<double> sq(prof.theta.size());
  for (std::size_t i = 0; i < sq.size(); ++i)
    sq[i] = prof.value[i] * prof.value[i] * std::pow(std::sin(prof.theta[i]), dim - 2);
  double norm = ring * composite_simpson(sq, theta0 / grid_nodes);
  const double scale = 1.0 / std::sqrt(norm);
  for (double& v : prof.value) v *= scale;
  auto interp = std::make_shared<Pchip>(prof.theta, prof.value);
  auto dinterp_y = prof.deriv;
  for (double& v : dinterp_y) v *= scale;
  auto dinterp = std::make_shared<Pchip>(prof.theta, dinterp_y);

  SpectralBasis b;
  b.dim = dim;
  b.cone = ConeSpec::cap(theta0);
  b.omega_lo = 0.0;
  b.omega_hi = theta0;
  b.grid_nodes = grid_nodes;
  b.lambdas = {lambda1};
  b.phi_fns = {[interp](double w) { return (*interp)(w); }};
  b.sup_norms = {*std::max_element(prof.value.begin(), prof.value.end())};
  b.phi1_deriv = [dinterp](double w) { return (*dinterp)(w); };
  return b;
}

struct PotentialPiece {
  double lo = 0, hi = 0, value = 0;
};

namespace detail {

// cos/sinc-like propagator entries for phi'' = -k2 phi over a span L.
inline void propagator(double k2, double len, double& C, double& S) {
  const double z = k2 * len * len;
  if (std::fabs(z) < 1e-10) {
    C = 1.0 - z / 2.0 + z * z / 24.0;
    S = len * (1.0 - z / 6.0 + z * z / 120.0);
    return;
  }
  if (k2 > 0.0) {
    const double k = std::sqrt(k2);
    C = std::cos(k * len);
    S = std::sin(k * len) / k;
  } else {
    const double m = std::sqrt(-k2);
    C = std::cosh(m * len);
    S = std::sinh(m * len) / m;
  }
}

struct PieceTable {
  std::vector<double> edges;   // 0 = e_0 < ... < e_m = theta0
  std::vector<double> values;  // V on each interval
  double value_at(double w) const {
    auto it = std::upper_bound(edges.begin(), edges.end(), w);
    std::size_t i = it - edges.begin();
    if (i > 0) --i;
    if (i >= values.size()) i = values.size() - 1;
    return values[i];
  }
};

inline PieceTable make_piece_table(double theta0, const std::vector<PotentialPiece>& pieces) {
  std::vector<PotentialPiece> ps = pieces;
  std::sort(ps.begin(), ps.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
  PieceTable t;
  t.edges.push_back(0.0);
  double cursor = 0.0;
  for (const auto& p : ps) {
    if (p.lo < cursor - 1e-14 || p.hi <= p.lo || p.hi > theta0 + 1e-14)
      throw std::invalid_argument("eigen_arc_with_potential: pieces must be disjoint and inside (0, theta0)");
    if (p.lo > cursor + 1e-14) {
      t.edges.push_back(p.lo);
      t.values.push_back(0.0);
    }
    t.edges.push_back(std::min(p.hi, theta0));
    t.values.push_back(p.value);
    cursor = p.hi;
  }
  if (cursor < theta0 - 1e-14) {
    t.edges.push_back(theta0);
    t.values.push_back(0.0);
  } else {
    t.edges.back() = theta0;
  }
  return t;
}

// phi(theta0) for the shooting solution of -phi'' - V phi = lambda phi, phi(0)=0, phi'(0)=1.
inline double transfer_end_value(const PieceTable& t, double lambda) {
  double phi = 0.0, dphi = 1.0;
  for (std::size_t j = 0; j + 1 < t.edges.size(); ++j) {
    const double len = t.edges[j + 1] - t.edges[j];
    const double k2 = lambda + t.values[j];
    double C, S;
    propagator(k2, len, C, S);
    const double nphi = C * phi + S * dphi;
    dphi = -k2 * S * phi + C * dphi;
    phi = nphi;
  }
  return phi;
}

}  // namespace detail

// Dirichlet eigenpairs of -d^2/dw^2 - V(w) on (0, theta0), V piecewise constant.
// Transfer-matrix shooting, eigenvalues refined by bisection.
inline SpectralBasis eigen_arc_with_potential(double theta0, const std::vector<PotentialPiece>& pieces,
                                              int count, int grid_nodes = 4096) {
  if (!(theta0 > 0.0) || !(theta0 < 2.0 * kPi))
    throw std::invalid_argument("eigen_arc_with_potential: theta0 must lie in (0, 2*pi)");
  if (count < 1) throw std::invalid_argument("eigen_arc_with_potential: need count >= 1");
  const auto table = detail::make_piece_table(theta0, pieces);
  double vmin = 0.0, vmax = 0.0;
  for (double v : table.values) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  const double base = (kPi / theta0) * (kPi / theta0);
  const double lo0 = base - vmax - 1.0;
  const double hi0 = base * double(count) * double(count) - vmin + 1.0;
  const double step = std::min(base, 1.0) / 8.0;

  auto f = [&](double lam) { return detail::transfer_end_value(table, lam); };
  std::vector<double> zeros;
  double prev_l = lo0, prev_f = f(lo0);
  for (double lam = lo0 + step; lam <= hi0 + step && int(zeros.size()) < count; lam += step) {
    double cur_f = f(lam);
    if (prev_f == 0.0) zeros.push_back(prev_l);
    if (prev_f * cur_f < 0.0) {
      double a = prev_l, b = lam, fa = prev_f;
      for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::fabs(b)); ++it) {
        const double m = 0.5 * (a + b), fm = f(m);
        if (fa * fm <= 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      zeros.push_back(0.5 * (a + b));
    }
    prev_l = lam;
    prev_f = cur_f;
  }
  if (int(zeros.size()) < count) {
    std::ostringstream msg;
    msg << "eigen_arc_with_potential: found " << zeros.size() << " eigenvalues below " << hi0
        << " while " << count << " were requested";
    throw std::runtime_error(msg.str());
  }

  SpectralBasis b;
  b.dim = 2;
  b.cone = ConeSpec::arc(theta0);
  b.omega_lo = 0.0;
  b.omega_hi = theta0;
  b.grid_nodes = grid_nodes;
  b.potential = [table](double w) { return table.value_at(w); };
  const double h = theta0 / grid_nodes;
  for (int k = 0; k < count; ++k) {
    const double lam = zeros[k];
    // piecewise-exact samples of the shooting solution
    std::vector<double> w(grid_nodes + 1), val(grid_nodes + 1);
    double phi = 0.0, dphi = 1.0;
    std::size_t seg = 0;
    double seg_start = 0.0;
    for (int i = 0; i <= grid_nodes; ++i) {
      const double x = std::min(theta0, i * h);
      while (seg + 2 < table.edges.size() && x > table.edges[seg + 1] + 1e-15) {
        const double len = table.edges[seg + 1] - seg_start;
        double C, S;
        detail::propagator(lam + table.values[seg], len, C, S);
        const double np = C * phi + S * dphi;
        dphi = -(lam + table.values[seg]) * S * phi + C * dphi;
        phi = np;
        ++seg;
        seg_start = table.edges[seg];
      }
      double C, S;
      detail::propagator(lam + table.values[seg], x - seg_start, C, S);
      w[i] = x;
      val[i] = C * phi + S * dphi;
    }
    val.back() = 0.0;
    std::vector<double> sq(val.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = val[i] * val[i];
    const double nrm = composite_simpson(sq, h);
    const double scale = 1.0 / std::sqrt(nrm);
    for (double& v : val) v *= scale;
    auto interp = std::make_shared<Pchip>(w, val);
    b.lambdas.push_back(lam);
    b.phi_fns.push_back([interp](double x) { return (*interp)(x); });
    double sup = 0.0;
    for (double v : val) sup = std::max(sup, std::fabs(v));
    b.sup_norms.push_back(sup);
  }
  return b;
}

inline SpectralBasis basis_for_cone(const ConeSpec& cone, int dim, int count = 8) {
  cone.validate(dim);
  if (std::holds_alternative<FullSphere>(cone.shape)) return full_sphere_basis(dim);
  if (const auto* a = std::get_if<Arc2D>(&cone.shape))
    return eigen_arc(a->theta0, a->theta0 == 2.0 * kPi ? 1 : count);
  if (const auto* c = std::get_if<Cap>(&cone.shape)) return eigen_cap(dim, c->theta0);
  return tabulated_basis(dim, std::get<TabulatedLambda>(cone.shape).lambda1);
}

// Angular factor of a separated function, with its Laplace-Beltrami values
// supplied through the defining identity of the profile (never by numerical
// differentiation on the sphere).
struct AngularProfile {
  std::function<double(double)> value;
  std::function<double(double)> laplace;
  double omega_lo = 0.0, omega_hi = 0.0;
  bool constant = false;
  double sup = 1.0;
  double inf_interior = 1.0;  // over interior sample nodes
  std::string label;
};

inline AngularProfile profile_mode(const SpectralBasis& basis, int mode) {
  if (!basis.has_profiles()) throw std::invalid_argument("profile_mode: basis has no eigenfunctions");
  AngularProfile p;
  p.omega_lo = basis.omega_lo;
  p.omega_hi = basis.omega_hi;
  p.constant = basis.constant_modes;
  const double lam = basis.lambda(mode);
  auto phi = basis.phi_fns[mode - 1];
  auto V = basis.potential;
  p.value = phi;
  p.laplace = [phi, lam, V](double w) { return -(lam + (V ? V(w) : 0.0)) * phi(w); };
  p.sup = basis.phi_sup(mode);
  p.label = "phi_" + std::to_string(mode);
  return p;
}

inline AngularProfile profile_phi1(const SpectralBasis& basis) {
  if (!basis.has_profiles()) throw std::invalid_argument("profile_phi1: basis has no eigenfunctions");
  AngularProfile p;
  p.omega_lo = basis.omega_lo;
  p.omega_hi = basis.omega_hi;
  p.constant = basis.constant_modes;
  const double lam = basis.lambda(1);
  auto phi = basis.phi_fns[0];
  auto V = basis.potential;
  p.value = phi;
  p.laplace = [phi, lam, V](double w) { return -(lam + (V ? V(w) : 0.0)) * phi(w); };
  p.sup = basis.phi_sup(1);
  if (p.constant) {
    p.inf_interior = p.sup;
  } else {
    double inf = p.sup;
    for (int i = 1; i < 256; ++i) {
      const double w = p.omega_lo + (p.omega_hi - p.omega_lo) * i / 256.0;
      inf = std::min(inf, phi(w));
    }
    p.inf_interior = inf;
  }
  p.label = "phi1";
  return p;
}

enum class InhomVariant { plain, shifted };

// Bounded positive solutions of the angular problems
//   -lap_omega phi - c phi = 1                (plain;  w = tau r^alpha phi)
//   -lap_omega psi - c (psi + 1) = 1          (shifted; the barrier uses psi + 1)
// with homogeneous Dirichlet data for phi and psi. The returned profile is
// phi for `plain` and psi + 1 for `shifted`; both are positive up to the
// boundary in the shifted case.
inline AngularProfile solve_angular_inhomogeneous(const SpectralBasis& basis, double c,
                                                  InhomVariant variant) {
  if (!basis.has_profiles())
    throw std::invalid_argument("solve_angular_inhomogeneous: basis has no eigenfunctions");
  if (basis.potential)
    throw std::invalid_argument("solve_angular_inhomogeneous: potential-free cross-section required");
  const double lam1 = basis.lambda(1);
  if (!(c < lam1 - 1e-12))
    throw std::invalid_argument("resonant or indefinite angular problem");

  AngularProfile p;
  p.omega_lo = basis.omega_lo;
  p.omega_hi = basis.omega_hi;
  p.label = variant == InhomVariant::plain ? "phi_inhom" : "phi_inhom_shifted";

  const bool shifted = variant == InhomVariant::shifted;
  auto finish = [&](std::function<double(double)> plain_value) {
    std::function<double(double)> val;
    if (shifted) {
      val = [plain_value, c](double w) { return 1.0 + (1.0 + c) * plain_value(w); };
    } else {
      val = plain_value;
    }
    p.value = val;
    // Delta phi = -c phi - 1 and Delta(psi+1) = -c (psi+1) - 1
    p.laplace = [val, c](double w) { return -c * val(w) - 1.0; };
    double sup = 0.0, inf = std::numeric_limits<double>::infinity();
    if (p.constant) {
      sup = inf = val(0.0);
    } else {
      for (int i = 1; i < 512; ++i) {
        const double w = p.omega_lo + (p.omega_hi - p.omega_lo) * i / 512.0;
        const double v = val(w);
        sup = std::max(sup, v);
        inf = std::min(inf, v);
      }
      if (shifted) inf = std::min(inf, 1.0);  // boundary value
    }
    p.sup = sup;
    p.inf_interior = inf;
    if (!(inf > 0.0)) throw std::runtime_error("solve_angular_inhomogeneous: profile not positive");
    return p;
  };

  if (basis.constant_modes) {
    p.constant = true;
    const double v = -1.0 / c;  // c < lambda1 = 0 here
    return finish([v](double) { return v; });
  }

  if (basis.dim == 2) {
    const double theta0 = basis.omega_hi;
    const double mid = 0.5 * theta0;
    if (std::fabs(c) < 1e-14) {
      return finish([mid, theta0](double w) { return 0.5 * w * (theta0 - w); });
    }
    if (c > 0.0) {
      const double k = std::sqrt(c);
      const double cs = std::cos(k * mid);
      return finish([c, k, mid, cs](double w) { return (std::cos(k * (w - mid)) / cs - 1.0) / c; });
    }
    const double m = std::sqrt(-c);
    const double ch = std::cosh(m * mid);
    return finish([c, m, mid, ch](double w) { return (std::cosh(m * (w - mid)) / ch - 1.0) / c; });
  }

  // caps: conservative FD solve of -(w phi')' / w - c phi = 1 with a zero-flux pole
  const int cells = basis.grid_nodes;
  const double theta0 = basis.omega_hi;
  const double h = theta0 / cells;
  const int dim = basis.dim;
  auto face_w = [&](int i) { return std::pow(std::sin(i * h), dim - 2); };
  auto cell_w = [&](int i) { return std::pow(std::sin((i + 0.5) * h), dim - 2); };
  std::vector<double> lo(cells - 1), di(cells), up(cells - 1), rhs(cells);
  for (int i = 0; i < cells; ++i) {
    const double wl = face_w(i), wr = face_w(i + 1), wc = cell_w(i);
    di[i] = (wl + (i == cells - 1 ? 2.0 * wr : wr)) / (h * h * wc) - c;
    if (i < cells - 1) {
      up[i] = -wr / (h * h * wc);
      lo[i] = -wr / (h * h * cell_w(i + 1));
    }
    rhs[i] = 1.0;
  }
  std::vector<double> sol = solve_tridiagonal(lo, di, up, rhs);
  std::vector<double> xs(cells + 2), ys(cells + 2);
  xs[0] = 0.0;
  ys[0] = sol[0] + (sol[0] - sol[1]) * 0.5;  // even reflection at the pole
  for (int i = 0; i < cells; ++i) {
    xs[i + 1] = (i + 0.5) * h;
    ys[i + 1] = sol[i];
  }
  xs[cells + 1] = theta0;
  ys[cells + 1] = 0.0;
  auto interp = std::make_shared<Pchip>(xs, ys);
  return finish([interp](double w) { return (*interp)(w); });
}

}  // namespace conecrit::spectral

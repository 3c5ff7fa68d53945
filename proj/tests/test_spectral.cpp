#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "conecrit/grid1d.hpp"
#include "conecrit/quadrature.hpp"
#include "conecrit/spectral.hpp"

using namespace conecrit;
using namespace conecrit::spectral;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("arc eigenvalues are the 1-d Dirichlet closed forms") {
  REQUIRE_THAT(eigen_arc(kPi / 2, 1).lambda(1), WithinAbs(4.0, 1e-12));
  REQUIRE_THAT(eigen_arc(kPi, 2).lambda(2), WithinAbs(4.0, 1e-12));
  const SpectralBasis circle = eigen_arc(2.0 * kPi, 1);
  REQUIRE(circle.lambda(1) == 0.0);
  REQUIRE_THAT(circle.phi(1, 0.3), WithinAbs(1.0 / std::sqrt(2.0 * kPi), 1e-14));
  REQUIRE_THROWS_AS(eigen_arc(-1.0, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(eigen_arc(7.0, 1), std::invalid_argument);
}

TEST_CASE("arc eigenfunctions are orthonormal under the shared quadrature") {
  const SpectralBasis b = eigen_arc(2.2, 8);
  for (int j = 1; j <= 8; ++j)
    for (int k = j; k <= 8; ++k) {
      const double ip = b.integrate_angular([&](double w) { return b.phi(j, w) * b.phi(k, w); });
      REQUIRE_THAT(ip, WithinAbs(j == k ? 1.0 : 0.0, 1e-8));
    }
}

TEST_CASE("cap principal eigenvalue matches the hemisphere closed form") {
  const SpectralBasis hemi3 = eigen_cap(3, kPi / 2);
  REQUIRE_THAT(hemi3.lambda(1), WithinAbs(2.0, 2e-6));
  const SpectralBasis hemi4 = eigen_cap(4, kPi / 2);
  REQUIRE_THAT(hemi4.lambda(1), WithinAbs(3.0, 3e-6));
  // eigenfunction proportional to cos(theta); compare shapes via the ratio
  const double ratio = hemi3.phi(1, 0.4) / std::cos(0.4);
  for (double th : {0.2, 0.7, 1.1, 1.4}) {
    REQUIRE_THAT(hemi3.phi(1, th), WithinAbs(ratio * std::cos(th), 5e-6 * ratio));
  }
  // normalization over the cap
  const double mass = hemi3.integrate_angular([&](double w) {
    const double v = hemi3.phi(1, w);
    return v * v;
  });
  REQUIRE_THAT(mass, WithinAbs(1.0, 1e-8));
}

TEST_CASE("principal eigenvalue decreases as the cross-section grows") {
  double prev = std::numeric_limits<double>::infinity();
  for (double th : {0.6, 1.0, 1.5, 2.2, 2.8, 3.0}) {
    const double lam = eigen_cap(3, th).lambda(1);
    REQUIRE(lam < prev);
    REQUIRE(lam > 0.0);
    prev = lam;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double th : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    const double lam = eigen_arc(th, 1).lambda(1);
    REQUIRE(lam < prev);
    prev = lam;
  }
}

TEST_CASE("piecewise-constant potentials: shift, bracketing, monotonicity") {
  const double th = kPi;
  // zero potential reproduces the plain arc
  const SpectralBasis plain = eigen_arc_with_potential(th, {}, 3);
  for (int k = 1; k <= 3; ++k)
    REQUIRE_THAT(plain.lambda(k), WithinAbs(eigen_arc(th, 3).lambda(k), 1e-8));

  // constant potential shifts the spectrum
  const SpectralBasis shifted = eigen_arc_with_potential(th, {{0.0, th, 0.7}}, 3);
  for (int k = 1; k <= 3; ++k)
    REQUIRE_THAT(shifted.lambda(k), WithinAbs(eigen_arc(th, 3).lambda(k) - 0.7, 1e-8));

  // indicator potential on the inner half: between the constant comparisons
  const double eps = 0.1;
  const SpectralBasis bumped = eigen_arc_with_potential(th, {{0.0, th / 2, eps}}, 1);
  REQUIRE(bumped.lambda(1) > 1.0 - eps);
  REQUIRE(bumped.lambda(1) < 1.0);

  // pointwise larger potential lowers the principal eigenvalue
  const SpectralBasis narrow = eigen_arc_with_potential(th, {{th / 4, th / 2, eps}}, 1);
  REQUIRE(narrow.lambda(1) > bumped.lambda(1));

  // orthonormality of the computed profiles
  for (int j = 1; j <= 3; ++j)
    for (int k = j; k <= 3; ++k) {
      const double ip =
          shifted.integrate_angular([&](double w) { return shifted.phi(j, w) * shifted.phi(k, w); });
      REQUIRE_THAT(ip, WithinAbs(j == k ? 1.0 : 0.0, 1e-8));
    }
}

namespace {

// Sine-series oracle for -phi'' - c phi = 1 on (0, theta0): the coefficients
// of the constant source against sqrt(2/theta0) sin(k pi w / theta0) are
// integrated by hand, so deep truncations stay accurate.
double expansion_solve(double theta0, double c, double w, int modes) {
  double sum = 0.0;
  for (int k = 1; k <= modes; k += 2) {  // even modes integrate to zero
    const double amp = std::sqrt(2.0 / theta0);
    const double fk = amp * theta0 / (k * kPi) * 2.0;
    const double lam = (k * kPi / theta0) * (k * kPi / theta0);
    sum += fk / (lam - c) * amp * std::sin(k * kPi * w / theta0);
  }
  return sum;
}

// second-order finite-difference oracle for the same problem
double fd_solve(double theta0, double c, double w, int n) {
  const double h = theta0 / n;
  std::vector<double> lo(n - 2, -1.0 / (h * h)), up(n - 2, -1.0 / (h * h));
  std::vector<double> di(n - 1, 2.0 / (h * h) - c), rhs(n - 1, 1.0);
  const std::vector<double> sol = solve_tridiagonal(lo, di, up, rhs);
  std::vector<double> xs(n + 1), ys(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) xs[i] = i * h;
  for (int i = 1; i < n; ++i) ys[i] = sol[i - 1];
  return Pchip(xs, ys)(w);
}

}  // namespace

TEST_CASE("inhomogeneous angular problems") {
  const SpectralBasis sphere = full_sphere_basis(3);
  const AngularProfile constant = solve_angular_inhomogeneous(sphere, -2.0, InhomVariant::plain);
  REQUIRE_THAT(constant.value(0.0), WithinAbs(0.5, 1e-14));
  REQUIRE_THAT(constant.laplace(0.0), WithinAbs(0.0, 1e-14));

  const double th = 1.9;
  const SpectralBasis arc = eigen_arc(th, 24);
  const AngularProfile zero_c = solve_angular_inhomogeneous(arc, 0.0, InhomVariant::plain);
  for (double w : {0.2, 0.8, 1.5})
    REQUIRE_THAT(zero_c.value(w), WithinAbs(0.5 * w * (th - w), 1e-12));

  const double c = 0.5 * arc.lambda(1);
  const AngularProfile mid = solve_angular_inhomogeneous(arc, c, InhomVariant::plain);
  for (double w : {0.3, 0.95, 1.6}) {
    REQUIRE_THAT(mid.value(w), WithinAbs(expansion_solve(th, c, w, 4001), 1e-6));
    REQUIRE_THAT(mid.value(w), WithinAbs(fd_solve(th, c, w, 4096), 1e-6));
    // defining identity
    REQUIRE_THAT(mid.laplace(w), WithinAbs(-c * mid.value(w) - 1.0, 1e-12));
  }

  const AngularProfile shifted = solve_angular_inhomogeneous(arc, c, InhomVariant::shifted);
  for (double w : {0.3, 0.95, 1.6}) {
    REQUIRE_THAT(shifted.value(w), WithinAbs(1.0 + (1.0 + c) * mid.value(w), 1e-10));
    REQUIRE(shifted.value(w) > 0.0);
  }
  // negative c keeps the shifted profile positive as well
  const AngularProfile neg = solve_angular_inhomogeneous(arc, -3.0, InhomVariant::shifted);
  for (double w : {0.1, 0.9, 1.8}) REQUIRE(neg.value(w) > 0.0);

  REQUIRE_THROWS_AS(solve_angular_inhomogeneous(arc, arc.lambda(1), InhomVariant::plain),
                    std::invalid_argument);

  // caps: FD path, checked against the defining identity and positivity
  const SpectralBasis cap = eigen_cap(3, 1.2, 2048);
  const AngularProfile capsol = solve_angular_inhomogeneous(cap, 0.5 * cap.lambda(1), InhomVariant::plain);
  for (double w : {0.2, 0.5, 0.9}) {
    REQUIRE(capsol.value(w) > 0.0);
    REQUIRE_THAT(capsol.laplace(w), WithinAbs(-0.5 * cap.lambda(1) * capsol.value(w) - 1.0, 1e-12));
  }
}

TEST_CASE("Barta consistency of computed principal eigenfunctions") {
  // arcs: -phi1''/phi1 is the constant (pi/theta0)^2, which must match the
  // solver's eigenvalue
  const SpectralBasis arc = eigen_arc(2.4, 1);
  const double k = kPi / 2.4;
  REQUIRE_THAT(k * k, WithinAbs(arc.lambda(1), 1e-10));

  // caps: differentiate the interpolated derivative profile
  const SpectralBasis cap = eigen_cap(3, kPi / 2);
  REQUIRE(bool(cap.phi1_deriv));
  const double h = 1e-4;
  double inf_cap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    const double th = 0.1 + (1.35 - 0.1) * i / 199.0;
    const double d2 = (cap.phi1_deriv(th + h) - cap.phi1_deriv(th - h)) / (2.0 * h);
    const double lap = d2 + (cap.dim - 2) / std::tan(th) * cap.phi1_deriv(th);
    inf_cap = std::min(inf_cap, -lap / cap.phi(1, th));
  }
  REQUIRE_THAT(inf_cap, WithinAbs(cap.lambda(1), 1e-6 * cap.lambda(1) + 1e-6));
}

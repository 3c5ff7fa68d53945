#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "conecrit/barriers.hpp"
#include "conecrit/classifier.hpp"
#include "conecrit/spectral.hpp"

using namespace conecrit;
using namespace conecrit::barriers;
using Catch::Matchers::WithinAbs;

namespace {

ReducedParams reduced(int dim, double mu, double s, double p, ConeSpec cone, double C = 1.0) {
  ReducedParams rp;
  rp.dim = dim;
  rp.mu = mu;
  rp.s = s;
  rp.power = p;
  rp.coupling = C;
  rp.cone = cone;
  return rp;
}

Classification classified(const ReducedParams& rp, const spectral::SpectralBasis& b) {
  return classify(rp, b);
}

}  // namespace

TEST_CASE("exact power solutions annihilate the linear part") {
  const spectral::SpectralBasis sphere = spectral::full_sphere_basis(3);
  const ReducedParams rp = reduced(3, 0.0, 2.0, 1.0, ConeSpec::full_sphere());
  for (double alpha : {-1.0, 0.0}) {  // both indicial roots for mu = lambda1 = 0
    BarrierSpec spec;
    spec.family = BarrierFamily::separated_power;
    spec.tau = 1.0;
    spec.alpha = alpha;
    spec.rho_prime = 1.0;
    spec.angular = spectral::profile_phi1(sphere);
    ResidualGrid grid;
    grid.r_min = 1.0;
    grid.r_max = 1e6;
    const LinearResidualRange lr = linear_residual_range(spec, rp, grid);
    REQUIRE(std::fabs(lr.min) <= 1e-12);
    REQUIRE(std::fabs(lr.max) <= 1e-12);
  }
}

TEST_CASE("superlinear separated-power barrier") {
  const spectral::SpectralBasis sphere = spectral::full_sphere_basis(3);
  const ReducedParams rp = reduced(3, 0.0, 1.0, 3.0, ConeSpec::full_sphere());
  const Classification cls = classified(rp, sphere);
  REQUIRE(cls.verdict == Verdict::exists);
  const BarrierSpec spec = construct_barrier(rp, cls, sphere);
  REQUIRE(spec.family == BarrierFamily::separated_power);
  // admissible window (-1, -1/2]; its midpoint
  REQUIRE_THAT(spec.alpha, WithinAbs(-0.75, 1e-12));
  const ResidualReport rep = residual(spec, rp, ResidualGrid::for_spec(spec));
  REQUIRE(rep.min_residual >= -1e-8);

  // negative control: exponent just outside the admissible interval
  BarrierSpec bad = spec;
  bad.alpha = 0.1;  // above alpha_plus = 0
  const ResidualReport repb = residual(bad, rp, ResidualGrid::for_spec(bad));
  REQUIRE(repb.min_residual < 0.0);
}

TEST_CASE("borderline p = 1 needs a large inner radius") {
  const spectral::SpectralBasis sphere = spectral::full_sphere_basis(3);
  const ReducedParams rp = reduced(3, 0.0, 3.0, 1.0, ConeSpec::full_sphere(), 5.0);
  const Classification cls = classified(rp, sphere);
  REQUIRE(cls.verdict == Verdict::exists);
  const BarrierSpec spec = construct_barrier(rp, cls, sphere);
  REQUIRE(spec.rho_prime > 1.0);
  REQUIRE(residual(spec, rp, ResidualGrid::for_spec(spec)).min_residual >= -1e-8);
}

TEST_CASE("log-corrected barrier at the Hardy threshold, p > 1") {
  const spectral::SpectralBasis sphere = spectral::full_sphere_basis(3);
  const ReducedParams rp = reduced(3, 0.25, 2.0, 2.0, ConeSpec::full_sphere());
  const Classification cls = classified(rp, sphere);
  REQUIRE(cls.verdict == Verdict::exists);
  REQUIRE_THAT(cls.critical_line_value, WithinAbs(1.5, 1e-12));
  const BarrierSpec spec = construct_barrier(rp, cls, sphere);
  REQUIRE(spec.family == BarrierFamily::power_log);
  REQUIRE_THAT(spec.beta, WithinAbs(0.5, 1e-15));
  REQUIRE(residual(spec, rp, ResidualGrid::for_spec(spec)).min_residual >= -1e-8);
}

TEST_CASE("sublinear families on arcs and spheres") {
  const double th = 1.8;
  const spectral::SpectralBasis arc = spectral::eigen_arc(th, 4);

  // 0 <= p < 1 with the inhomogeneous angular profile
  ReducedParams rp = reduced(2, 0.5, 6.0, 0.5, ConeSpec::arc(th));
  Classification cls = classified(rp, arc);
  REQUIRE(cls.verdict == Verdict::exists);
  REQUIRE(cls.family == BarrierFamily::sublinear_inhom);
  BarrierSpec spec = construct_barrier(rp, cls, arc);
  REQUIRE(residual(spec, rp, ResidualGrid::for_spec(spec)).min_residual >= -1e-8);

  // p < 0 with the shifted profile
  rp = reduced(2, 0.5, 8.0, -1.5, ConeSpec::arc(th));
  cls = classified(rp, arc);
  REQUIRE(cls.verdict == Verdict::exists);
  REQUIRE(cls.family == BarrierFamily::sublinear_neg);
  spec = construct_barrier(rp, cls, arc);
  REQUIRE(spec.angular.inf_interior > 0.0);
  REQUIRE(residual(spec, rp, ResidualGrid::for_spec(spec)).min_residual >= -1e-8);

  // p = 0 edge of the inhomogeneous family
  rp = reduced(2, 0.0, 5.0, 0.0, ConeSpec::arc(th));
  cls = classified(rp, arc);
  spec = construct_barrier(rp, cls, arc);
  REQUIRE(residual(spec, rp, ResidualGrid::for_spec(spec)).min_residual >= -1e-8);
}

TEST_CASE("full-sphere log barrier on the critical line, p < -1") {
  const spectral::SpectralBasis sphere = spectral::full_sphere_basis(3);
  const ReducedParams rp = reduced(3, 0.25, 3.5, -2.0, ConeSpec::full_sphere());
  const Classification cls = classified(rp, sphere);
  REQUIRE(cls.verdict == Verdict::exists);
  REQUIRE(cls.family == BarrierFamily::full_sphere_log);
  const BarrierSpec spec = construct_barrier(rp, cls, sphere);
  // beta at the midpoint of (2/(1-p), 1) = (2/3, 1)
  REQUIRE_THAT(spec.beta, WithinAbs(0.5 * (2.0 / 3.0 + 1.0), 1e-12));
  REQUIRE(residual(spec, rp, ResidualGrid::for_spec(spec)).min_residual >= -1e-8);

  // the leading log-order coefficient of the residual changes sign as beta
  // leaves the window: sample tau beta(1-beta) - C tau^p t^{beta(p-1)+2}
  auto bracket = [&](double beta, double tau, double r) {
    const double t = std::log(r);
    return tau * beta * (1.0 - beta) -
           rp.coupling * std::pow(tau, rp.power) * std::pow(t, beta * (rp.power - 1.0) + 2.0);
  };
  for (double r : {1e4, 1e6, 1e8}) REQUIRE(bracket(spec.beta, spec.tau, r) > 0.0);
  REQUIRE(bracket(1.2, 1.0, 1e8) < 0.0);          // beta above the window
  REQUIRE(bracket(0.4, 1.0, 1e8) < 0.0);          // beta below the window
  // grid residuals of the out-of-window controls are negative
  for (double beta_bad : {0.4, 1.2}) {
    BarrierSpec bad = spec;
    bad.beta = beta_bad;
    bad.tau = 1.0;
    REQUIRE(residual(bad, rp, ResidualGrid::for_spec(bad)).min_residual < 0.0);
  }
}

TEST_CASE("log-corrected sublinear barrier at the Hardy threshold") {
  const spectral::SpectralBasis sphere = spectral::full_sphere_basis(3);
  ReducedParams rp = reduced(3, 0.25, 3.0, 0.5, ConeSpec::full_sphere());
  Classification cls = classified(rp, sphere);
  REQUIRE(cls.verdict == Verdict::exists);
  REQUIRE(cls.family == BarrierFamily::critical_sublinear);
  BarrierSpec spec = construct_barrier(rp, cls, sphere);
  REQUIRE(spec.epsilon == 0.125);
  REQUIRE(spec.beta > spec.sigma_aux);
  REQUIRE(spec.sigma_aux > 1.5);
  ResidualReport rep = residual(spec, rp, ResidualGrid::for_spec(spec));
  REQUIRE(rep.explicit_part_only);
  REQUIRE(rep.min_residual >= -1e-8);

  // proper cone variant (lambda1 > 0 enters the sufficiency display)
  const double th = kPi;
  const spectral::SpectralBasis arc = spectral::eigen_arc(th, 2);
  rp = reduced(2, 0.0 + arc.lambda(1), 4.0, -0.5, ConeSpec::arc(th));
  cls = classified(rp, arc);
  REQUIRE(cls.critical_potential);
  REQUIRE(cls.family == BarrierFamily::critical_sublinear);
  spec = construct_barrier(rp, cls, arc);
  rep = residual(spec, rp, ResidualGrid::for_spec(spec));
  REQUIRE(rep.min_residual >= -1e-8);
}

TEST_CASE("tau monotonicity of the normalized residual") {
  const spectral::SpectralBasis sphere = spectral::full_sphere_basis(3);
  // superlinear: normalized residual grows as tau shrinks
  {
    const ReducedParams rp = reduced(3, 0.0, 1.0, 3.0, ConeSpec::full_sphere());
    const Classification cls = classified(rp, sphere);
    BarrierSpec spec = construct_barrier(rp, cls, sphere);
    spec.tau *= 64.0;  // push into violation
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
      const double nr = residual(spec, rp, ResidualGrid::for_spec(spec)).min_residual / spec.tau;
      REQUIRE(nr >= prev);
      prev = nr;
      spec.tau *= 0.5;
    }
  }
  // sublinear: normalized residual grows as tau grows
  {
    const ReducedParams rp = reduced(3, 0.0, 4.0, 0.5, ConeSpec::full_sphere());
    const Classification cls = classified(rp, sphere);
    BarrierSpec spec = construct_barrier(rp, cls, sphere);
    spec.tau /= 64.0;
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
      const double nr = residual(spec, rp, ResidualGrid::for_spec(spec)).min_residual / spec.tau;
      REQUIRE(nr >= prev);
      prev = nr;
      spec.tau *= 2.0;
    }
  }
}

TEST_CASE("construction refuses nonexistence inputs") {
  const spectral::SpectralBasis sphere = spectral::full_sphere_basis(3);
  const ReducedParams rp = reduced(3, 0.0, 0.0, 3.0, ConeSpec::full_sphere());
  const Classification cls = classified(rp, sphere);
  REQUIRE(cls.verdict == Verdict::no_positive_supersolutions);
  REQUIRE_THROWS_WITH(construct_barrier(rp, cls, sphere),
                      Catch::Matchers::ContainsSubstring("NoPositiveSupersolutions"));
}

TEST_CASE("pseudo-radial attempts with the wrong angular factor fail") {
  const double th = 2.0;
  const spectral::SpectralBasis arc = spectral::eigen_arc(th, 3);
  // Hardy-threshold potential on a proper cone: mu = C_H + lambda1 = lambda1 (N = 2)
  const ReducedParams rp = reduced(2, arc.lambda(1), 3.0, 0.5, ConeSpec::arc(th));
  BarrierSpec spec;
  spec.family = BarrierFamily::separated_power;
  spec.tau = 1.0;
  spec.alpha = 0.0;  // alpha* for N = 2
  spec.rho_prime = 2.0;
  spec.angular = spectral::profile_mode(arc, 2);
  ResidualGrid grid = ResidualGrid::for_spec(spec);
  const LinearResidualRange lr = linear_residual_range(spec, rp, grid);
  REQUIRE(lr.min < 0.0);
  REQUIRE(lr.max > 0.0);
  // with the principal eigenfunction the linear part vanishes identically
  spec.angular = spectral::profile_phi1(arc);
  const LinearResidualRange ok = linear_residual_range(spec, rp, grid);
  REQUIRE(std::fabs(ok.min) <= 1e-10);
  REQUIRE(std::fabs(ok.max) <= 1e-10);
}

TEST_CASE("classification attaches a verified barrier") {
  const spectral::SpectralBasis sphere = spectral::full_sphere_basis(3);
  const Classification cls =
      classify_with_barrier(reduced(3, 0.0, 1.0, 3.0, ConeSpec::full_sphere()), sphere);
  REQUIRE(cls.verdict == Verdict::exists);
  REQUIRE(cls.barrier.has_value());
  const Classification none =
      classify_with_barrier(reduced(3, 0.0, 0.0, 3.0, ConeSpec::full_sphere()), sphere);
  REQUIRE_FALSE(none.barrier.has_value());
}

TEST_CASE("sublinear growth floor") {
  const spectral::SpectralBasis sphere = spectral::full_sphere_basis(3);
  // s chosen so the scaling exponent (s-2)/(p-1) = -0.8 sits inside (-1, 0)
  const double p = 0.5, s = 2.4;
  const ReducedParams rp = reduced(3, 0.0, s, p, ConeSpec::full_sphere());
  const Classification cls = classified(rp, sphere);
  const double target = (2.0 - s) / (1.0 - p);  // = -0.8

  // barrier pinned to the scaling exponent saturates the bound
  BarrierSpec spec = construct_barrier(rp, cls, sphere);
  spec.alpha = (s - 2.0) / (p - 1.0);
  const double c_sat = spec.alpha * (spec.alpha + 1.0) + rp.mu;
  spec.angular = spectral::solve_angular_inhomogeneous(sphere, c_sat, spectral::InhomVariant::plain);
  std::vector<double> radii = {1e2, 3e2, 1e3, 3e3, 1e4, 3e4, 1e5};
  auto val = [&](double r, double w) { return barrier_value(spec, r, w); };
  LowerBoundReport rep = sublinear_lower_bound_check(val, p, s, 0.0, kPi, radii);
  REQUIRE_THAT(rep.fitted_exponent, WithinAbs(target, 1e-3));
  REQUIRE_FALSE(rep.violated);

  // pure power above the floor: fitted exponent is that power
  auto above = [&](double r, double) { return std::pow(r, target + 1.0); };
  rep = sublinear_lower_bound_check(above, p, s, 0.0, kPi, radii);
  REQUIRE_THAT(rep.fitted_exponent, WithinAbs(target + 1.0, 1e-3));
  REQUIRE_FALSE(rep.violated);

  // decay faster than the floor is flagged
  auto below = [&](double r, double) { return std::pow(r, target - 0.5); };
  rep = sublinear_lower_bound_check(below, p, s, 0.0, kPi, radii);
  REQUIRE(rep.violated);

  REQUIRE_THROWS_AS(sublinear_lower_bound_check(val, p, s, 0.0, kPi, {1e2, 1e3, 1e4}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(sublinear_lower_bound_check(val, 1.5, s, 0.0, kPi, radii),
                    std::invalid_argument);
}

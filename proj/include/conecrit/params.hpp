#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

namespace conecrit {

inline constexpr double kPi = std::numbers::pi;

// Which side of the unit sphere the cone-like domain lives on.
enum class Domain { exterior, interior };

// Cross-section of the cone: a subdomain of the unit sphere S^{N-1}.
struct FullSphere {};
struct Arc2D {
  double theta0 = kPi;  // opening angle in (0, 2*pi]; N == 2 only
};
struct Cap {
  double theta0 = kPi / 2;  // polar half-angle in (0, pi); N >= 3 only
};
struct TabulatedLambda {
  double lambda1 = 0.0;  // user-supplied principal Dirichlet eigenvalue
};

struct ConeSpec {
  std::variant<FullSphere, Arc2D, Cap, TabulatedLambda> shape = FullSphere{};

  static ConeSpec full_sphere() { return {FullSphere{}}; }
  static ConeSpec arc(double theta0) { return {Arc2D{theta0}}; }
  static ConeSpec cap(double theta0) { return {Cap{theta0}}; }
  static ConeSpec tabulated(double lambda1) { return {TabulatedLambda{lambda1}}; }

  bool is_full_sphere() const {
    if (std::holds_alternative<FullSphere>(shape)) return true;
    if (const auto* a = std::get_if<Arc2D>(&shape)) return a->theta0 == 2.0 * kPi;
    // A tabulated eigenvalue carries no geometry; treat it as a proper subdomain.
    return false;
  }

  void validate(int dim) const {
    if (dim < 2) throw std::invalid_argument("ConeSpec: dimension must be >= 2");
    if (const auto* a = std::get_if<Arc2D>(&shape)) {
      if (dim != 2) throw std::invalid_argument("ConeSpec: arc cross-sections require N = 2");
      if (!(a->theta0 > 0.0) || !(a->theta0 <= 2.0 * kPi))
        throw std::invalid_argument("ConeSpec: arc angle must lie in (0, 2*pi]");
    } else if (const auto* c = std::get_if<Cap>(&shape)) {
      if (dim < 3) throw std::invalid_argument("ConeSpec: caps require N >= 3");
      if (!(c->theta0 > 0.0) || !(c->theta0 < kPi))
        throw std::invalid_argument("ConeSpec: cap half-angle must lie in (0, pi)");
    } else if (const auto* t = std::get_if<TabulatedLambda>(&shape)) {
      if (!(t->lambda1 >= 0.0))
        throw std::invalid_argument("ConeSpec: tabulated lambda1 must be >= 0");
    }
  }
};

// Parameters of the weighted equation
//   -div(|x|^A grad u) - B |x|^{A-2} u = C |x|^{A-sigma} u^p
// on the cone-like domain {r > rho, omega in Omega}.
struct ProblemParams {
  int dim = 3;            // N
  double weight_pow = 0;  // A
  double potential = 0;   // B
  double coupling = 1;    // C > 0
  double sigma = 0;
  double power = 2;       // p
  ConeSpec cone;
  double rho = 1;

  void validate() const {
    cone.validate(dim);
    if (!(coupling > 0.0)) throw std::invalid_argument("ProblemParams: C must be > 0");
    if (!(rho > 0.0)) throw std::invalid_argument("ProblemParams: rho must be > 0");
    if (!std::isfinite(weight_pow) || !std::isfinite(potential) || !std::isfinite(sigma) ||
        !std::isfinite(power))
      throw std::invalid_argument("ProblemParams: parameters must be finite");
  }
};

// Parameters of the unweighted form
//   -lap w - mu |x|^{-2} w = C |x|^{-s} w^p
// reached by the substitution w = |x|^{A/2} u.
struct ReducedParams {
  int dim = 3;
  double mu = 0;
  double s = 0;
  double coupling = 1;  // C
  double power = 2;     // p
  ConeSpec cone;
  double rho = 1;
  Domain domain = Domain::exterior;

  void validate() const {
    cone.validate(dim);
    if (!(coupling > 0.0)) throw std::invalid_argument("ReducedParams: C must be > 0");
    if (!(rho > 0.0)) throw std::invalid_argument("ReducedParams: rho must be > 0");
  }
};

// (N-2)^2/4 for the reduced equation.
inline double hardy_constant(int dim) {
  const double q = 0.5 * double(dim - 2);
  return q * q;
}

// (2-N-A)^2/4, the threshold seen by the original variables.
inline double hardy_constant_weighted(int dim, double weight_pow) {
  const double q = 0.5 * (2.0 - double(dim) - weight_pow);
  return q * q;
}

inline ReducedParams reduce(const ProblemParams& in) {
  in.validate();
  const double half_a = 0.5 * in.weight_pow;
  ReducedParams out;
  out.dim = in.dim;
  out.mu = in.potential - half_a * (half_a + double(in.dim) - 2.0);
  out.s = in.sigma + half_a * (in.power - 1.0);
  out.coupling = in.coupling;
  out.power = in.power;
  out.cone = in.cone;
  out.rho = in.rho;
  out.domain = Domain::exterior;
  return out;
}

inline double kelvin_s(int dim, double power, double s) {
  return double(dim + 2) - power * double(dim - 2) - s;
}

// Inversion y = x/|x|^2: swaps exterior and interior cone problems.
inline ReducedParams kelvin(const ReducedParams& in) {
  in.validate();
  ReducedParams out = in;
  out.s = kelvin_s(in.dim, in.power, in.s);
  out.domain = in.domain == Domain::exterior ? Domain::interior : Domain::exterior;
  return out;
}

// Exponent of the rescaling tau^{(2-s)/(p-1)} w(tau y) that renormalizes the
// inner radius; a pure function of (p, s).
inline double scaling_exponent(double power, double s, double tau = 1.0) {
  if (!(tau > 0.0)) throw std::invalid_argument("scaling_exponent: tau must be > 0");
  if (power == 1.0) throw std::invalid_argument("scaling undefined at p=1");
  return (2.0 - s) / (power - 1.0);
}

}  // namespace conecrit

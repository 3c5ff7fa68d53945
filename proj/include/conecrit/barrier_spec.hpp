#pragma once

#include "conecrit/spectral.hpp"

namespace conecrit {

// The explicit super-solution families used on the existence side.
enum class BarrierFamily {
  separated_power,     // tau r^alpha phi1
  power_log,           // tau r^{alpha*} log^beta(r) phi1
  sublinear_inhom,     // tau r^alpha phi,     0 <= p < 1
  sublinear_neg,       // tau r^alpha (psi+1), p < 0
  critical_sublinear,  // log-corrected barrier at the Hardy threshold, p < 1
  full_sphere_log,     // tau r^{alpha*} log^beta(r), p < -1 on the line
};

inline const char* barrier_family_name(BarrierFamily f) {
  switch (f) {
    case BarrierFamily::separated_power: return "SeparatedPower";
    case BarrierFamily::power_log: return "PowerLog";
    case BarrierFamily::sublinear_inhom: return "SublinearInhom";
    case BarrierFamily::sublinear_neg: return "SublinearNeg";
    case BarrierFamily::critical_sublinear: return "CriticalSublinear";
    case BarrierFamily::full_sphere_log: return "FullSphereLog";
  }
  return "?";
}

struct BarrierSpec {
  BarrierFamily family = BarrierFamily::separated_power;
  double tau = 1.0;
  double alpha = 0.0;      // radial power (alpha* for the log-corrected families)
  double beta = 0.0;       // log exponent where the family carries one
  double sigma_aux = 0.0;  // critical_sublinear: exponent of the auxiliary source
  double epsilon = 0.0;    // critical_sublinear: Hardy-remainder fraction in (0, 1/4)
  double rho_prime = 1.0;  // inner radius from which the inequality is asserted
  spectral::AngularProfile angular;
};

}  // namespace conecrit

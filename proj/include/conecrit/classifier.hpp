#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "conecrit/barrier_spec.hpp"
#include "conecrit/params.hpp"
#include "conecrit/spectral.hpp"

namespace conecrit {

enum class RootKind { distinct, double_root, no_real_roots };

// Real roots of alpha^2 + b*alpha - rhs = 0, ordered lower <= upper.
struct Roots {
  RootKind kind = RootKind::no_real_roots;
  double lower = std::numeric_limits<double>::quiet_NaN();
  double upper = std::numeric_limits<double>::quiet_NaN();

  bool real() const { return kind != RootKind::no_real_roots; }
  double star() const { return lower; }  // the double root
};

// Quadratic with linear coefficient b; cancellation-safe via the root product.
inline Roots quadratic_roots(double b, double rhs, double tol = 1e-12) {
  const double disc = 0.25 * b * b + rhs;
  Roots r;
  if (disc < -tol) return r;
  if (disc <= tol) {
    r.kind = RootKind::double_root;
    r.lower = r.upper = -0.5 * b;
    return r;
  }
  const double sq = std::sqrt(disc);
  r.kind = RootKind::distinct;
  if (b > 0.0) {
    r.lower = -0.5 * b - sq;          // no cancellation: both terms negative
    r.upper = -rhs / r.lower;         // product of roots = -rhs
  } else if (b < 0.0) {
    r.upper = -0.5 * b + sq;
    r.lower = -rhs / r.upper;
  } else {
    r.lower = -sq;
    r.upper = sq;
  }
  return r;
}

// Roots of alpha (alpha + N - 2) = lambda1 - mu. Double root exactly at the
// Hardy threshold mu = (N-2)^2/4 + lambda1, where alpha* = (2-N)/2.
inline Roots indicial_roots(int dim, double mu, double lambda1, double tol = 1e-12) {
  return quadratic_roots(double(dim) - 2.0, lambda1 - mu, tol);
}

// Roots of gamma (gamma + N - 2 + A) = lambda1 - B seen by the weighted form.
inline Roots weighted_indicial_roots(int dim, double weight_pow, double potential, double lambda1,
                                     double tol = 1e-12) {
  return quadratic_roots(double(dim) - 2.0 + weight_pow, lambda1 - potential, tol);
}

enum class Branch { lower, upper, both };

inline const char* branch_name(Branch b) {
  switch (b) {
    case Branch::lower: return "lower";
    case Branch::upper: return "upper";
    case Branch::both: return "both";
  }
  return "?";
}

enum class LineSide { exterior_min, interior_max };

struct CriticalLineValue {
  double value = std::numeric_limits<double>::quiet_NaN();
  Branch branch = Branch::both;
};

// The two affine branches alpha^{-+}(p-1)+2 meet at (1,2); the exterior set
// uses their min, the interior (post-inversion) set their max.
inline CriticalLineValue critical_line(double power, const Roots& roots, LineSide side) {
  if (!roots.real()) throw std::runtime_error("no critical line: mu exceeds the Hardy threshold");
  CriticalLineValue out;
  if (roots.kind == RootKind::double_root) {
    out.value = roots.star() * (power - 1.0) + 2.0;
    out.branch = Branch::both;
    return out;
  }
  const double lo = roots.lower * (power - 1.0) + 2.0;
  const double hi = roots.upper * (power - 1.0) + 2.0;
  if (lo == hi) {
    out.value = lo;
    out.branch = Branch::both;
    return out;
  }
  const bool want_min = side == LineSide::exterior_min;
  if ((lo < hi) == want_min) {
    out.value = lo;
    out.branch = Branch::lower;
  } else {
    out.value = hi;
    out.branch = Branch::upper;
  }
  return out;
}

enum class Verdict { exists, no_positive_supersolutions, open_problem };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::exists: return "Exists";
    case Verdict::no_positive_supersolutions: return "NoPositiveSupersolutions";
    case Verdict::open_problem: return "OpenProblem";
  }
  return "?";
}

enum class Justification {
  linear_spectral,          // the degenerate point (p, s) = (1, 2)
  supercritical_potential,  // mu above the Hardy threshold
  subcritical_line,         // strictly below the critical line
  critical_line,            // on the critical line
  barrier_exists,           // above the line / explicit construction applies
};

inline const char* justification_name(Justification j) {
  switch (j) {
    case Justification::linear_spectral: return "LinearSpectral";
    case Justification::supercritical_potential: return "SupercriticalPotential";
    case Justification::subcritical_line: return "SubcriticalLine";
    case Justification::critical_line: return "CriticalLine";
    case Justification::barrier_exists: return "BarrierExists";
  }
  return "?";
}

struct Classification {
  Verdict verdict = Verdict::no_positive_supersolutions;
  Justification justification = Justification::subcritical_line;
  Roots roots;
  double critical_line_value = std::numeric_limits<double>::quiet_NaN();
  Branch branch = Branch::both;
  bool critical_potential = false;  // mu sits at the Hardy threshold
  Domain domain = Domain::exterior;
  BarrierFamily family = BarrierFamily::separated_power;  // when verdict == exists
  std::optional<BarrierSpec> barrier;  // attached by barriers::classify_with_barrier

  // echo of the data the decision tree consumed (exterior-side values)
  int dim = 3;
  double power = 0, s = 0, mu = 0, lambda1 = 0, coupling = 1;
  bool full_sphere = false;
};

inline bool on_line(double s, double line, double tol) {
  return std::fabs(s - line) <= tol * std::max(1.0, std::fabs(s));
}

// Verdict for the reduced equation on an exterior (or, via inversion, interior)
// cone-like domain. All comparisons against critical values use `line_tol`
// scaled by max(1, |s|).
inline Classification classify(const ReducedParams& rp, const spectral::SpectralBasis& basis,
                               double line_tol = 1e-12) {
  rp.validate();
  if (basis.dim != rp.dim) throw std::invalid_argument("classify: basis dimension mismatch");
  if (basis.potential) throw std::invalid_argument("classify: cross-section potential not supported here");

  if (rp.domain == Domain::interior) {
    // Inversion maps the interior problem to the exterior one; the verdict is
    // read off there and the reported line is the max-branch one.
    Classification cls = classify(kelvin(rp), basis, line_tol);
    cls.domain = Domain::interior;
    if (cls.roots.real()) {
      const CriticalLineValue line = critical_line(rp.power, cls.roots, LineSide::interior_max);
      cls.critical_line_value = line.value;
      cls.branch = line.branch;
    }
    return cls;
  }

  Classification cls;
  cls.domain = Domain::exterior;
  cls.dim = rp.dim;
  cls.power = rp.power;
  cls.s = rp.s;
  cls.coupling = rp.coupling;
  cls.lambda1 = basis.lambda(1);
  cls.mu = rp.mu;
  cls.full_sphere = rp.cone.is_full_sphere();

  const double threshold = hardy_constant(rp.dim) + cls.lambda1;
  const double mu_tol = line_tol * std::max(1.0, std::fabs(threshold));
  cls.roots = indicial_roots(rp.dim, rp.mu, cls.lambda1, mu_tol);
  cls.critical_potential = std::fabs(rp.mu - threshold) <= mu_tol;

  if (rp.mu > threshold + mu_tol) {
    cls.verdict = Verdict::no_positive_supersolutions;
    cls.justification = Justification::supercritical_potential;
    return cls;
  }

  const CriticalLineValue line = critical_line(rp.power, cls.roots, LineSide::exterior_min);
  cls.critical_line_value = line.value;
  cls.branch = line.branch;

  // the degenerate linear point (1, 2) is decided by the spectral threshold
  if (on_line(rp.power, 1.0, line_tol) && on_line(rp.s, 2.0, line_tol)) {
    cls.justification = Justification::linear_spectral;
    if (rp.mu + rp.coupling > threshold + mu_tol) {
      cls.verdict = Verdict::no_positive_supersolutions;
    } else {
      cls.verdict = Verdict::exists;
      cls.family = BarrierFamily::separated_power;
    }
    return cls;
  }

  const bool line_hit = on_line(rp.s, line.value, line_tol);
  const bool below = !line_hit && rp.s < line.value;

  auto existing_family = [&]() {
    if (cls.critical_potential) {
      return rp.power >= 1.0 ? BarrierFamily::power_log : BarrierFamily::critical_sublinear;
    }
    if (rp.power > 1.0 || on_line(rp.power, 1.0, line_tol)) return BarrierFamily::separated_power;
    if (rp.power >= 0.0) return BarrierFamily::sublinear_inhom;
    return BarrierFamily::sublinear_neg;
  };

  if (!cls.critical_potential) {
    if (below || line_hit) {
      cls.verdict = Verdict::no_positive_supersolutions;
      cls.justification = line_hit ? Justification::critical_line : Justification::subcritical_line;
    } else {
      cls.verdict = Verdict::exists;
      cls.justification = Justification::barrier_exists;
      cls.family = existing_family();
    }
    return cls;
  }

  // mu at the Hardy threshold
  if (below) {
    cls.verdict = Verdict::no_positive_supersolutions;
    cls.justification = Justification::subcritical_line;
    return cls;
  }
  if (line_hit) {
    if (rp.power >= -1.0) {
      cls.verdict = Verdict::no_positive_supersolutions;
      cls.justification = Justification::critical_line;
    } else if (cls.full_sphere) {
      cls.verdict = Verdict::exists;
      cls.justification = Justification::barrier_exists;
      cls.family = BarrierFamily::full_sphere_log;
    } else {
      cls.verdict = Verdict::open_problem;
      cls.justification = Justification::critical_line;
    }
    return cls;
  }
  cls.verdict = Verdict::exists;
  cls.justification = Justification::barrier_exists;
  cls.family = existing_family();
  return cls;
}

// Convenience wrapper in the original (weighted) variables.
inline Classification classify_weighted(const ProblemParams& pp, const spectral::SpectralBasis& basis,
                                        double line_tol = 1e-12) {
  return classify(reduce(pp), basis, line_tol);
}

// ---------------------------------------------------------------------------
// phase-diagram grid and the exact boundary polyline

struct RegionPoint {
  double p = 0, sigma = 0;
  Verdict verdict = Verdict::no_positive_supersolutions;
  Justification justification = Justification::subcritical_line;
  double critical_line_value = std::numeric_limits<double>::quiet_NaN();
  Branch branch = Branch::both;
};

enum class SegmentStyle { solid, dashed };

struct BoundarySegment {
  double p0 = 0, sigma0 = 0, p1 = 0, sigma1 = 0;
  double slope = 0;
  Branch branch = Branch::both;
  SegmentStyle style = SegmentStyle::solid;
};

struct GlyphSpec {
  double p = 0, sigma = 0;
  bool filled = false;
};

struct RegionBoundary {
  Roots gamma;                 // weighted-variable roots (slopes of the branches)
  bool critical_regime = false;
  double kink_p = 1.0, kink_sigma = 2.0;
  std::vector<BoundarySegment> segments;
  std::vector<GlyphSpec> glyphs;
  std::optional<double> sigma_at_p0;   // boundary value at p = 0
  std::optional<double> sigma_at_pm1;  // boundary value at p = -1 (critical regime)
  std::optional<double> p_cross_lower, p_cross_upper;  // sigma = 0 crossings per branch
};

struct RegionGrid {
  std::vector<double> ps, sigmas;
  std::vector<RegionPoint> points;  // p-major: index = ip * sigmas.size() + is
  RegionBoundary boundary;
  Domain domain = Domain::exterior;
};

inline double critical_line_weighted(const ProblemParams& pp, double lambda1, double power,
                                     LineSide side, double tol = 1e-12) {
  const Roots g = weighted_indicial_roots(pp.dim, pp.weight_pow, pp.potential, lambda1, tol);
  return critical_line(power, g, side).value;
}

inline RegionBoundary region_boundary(const ProblemParams& tmpl, const spectral::SpectralBasis& basis,
                                      Domain domain, double p_min, double p_max,
                                      double line_tol = 1e-12) {
  const double lambda1 = basis.lambda(1);
  const double threshold = hardy_constant_weighted(tmpl.dim, tmpl.weight_pow) + lambda1;
  RegionBoundary rb;
  rb.gamma = weighted_indicial_roots(tmpl.dim, tmpl.weight_pow, tmpl.potential, lambda1, line_tol);
  if (!rb.gamma.real()) {
    return rb;  // no boundary: nonexistence everywhere
  }
  rb.critical_regime = std::fabs(tmpl.potential - threshold) <= line_tol * std::max(1.0, std::fabs(threshold));
  const LineSide side = domain == Domain::exterior ? LineSide::exterior_min : LineSide::interior_max;
  auto line_at = [&](double p) { return critical_line(p, rb.gamma, side); };

  const double g_lo = rb.gamma.lower, g_hi = rb.gamma.upper;
  const bool dbl = rb.gamma.kind == RootKind::double_root;
  // Left (p <= 1) and right (p >= 1) active slopes.
  const double slope_left = dbl ? g_lo : (side == LineSide::exterior_min ? g_hi : g_lo);
  const double slope_right = dbl ? g_lo : (side == LineSide::exterior_min ? g_lo : g_hi);
  const Branch branch_left = dbl ? Branch::both : (side == LineSide::exterior_min ? Branch::upper : Branch::lower);
  const Branch branch_right = dbl ? Branch::both : (side == LineSide::exterior_min ? Branch::lower : Branch::upper);

  auto add_segment = [&](double a, double b, double slope, Branch br, SegmentStyle style) {
    if (!(b > a)) return;
    BoundarySegment seg;
    seg.p0 = a;
    seg.sigma0 = slope * (a - 1.0) + 2.0;
    seg.p1 = b;
    seg.sigma1 = slope * (b - 1.0) + 2.0;
    seg.slope = slope;
    seg.branch = br;
    seg.style = style;
    rb.segments.push_back(seg);
  };

  // On the critical line the set is closed for p >= -1 and excluded (full
  // sphere) or open (proper cone) for p < -1; render the latter dashed.
  auto style_for = [&](double seg_end) {
    return rb.critical_regime && seg_end <= -1.0 ? SegmentStyle::dashed : SegmentStyle::solid;
  };
  auto emit_half = [&](double a, double b, double slope, Branch br) {
    if (!(b > a)) return;
    if (rb.critical_regime && a < -1.0 && b > -1.0) {
      add_segment(a, -1.0, slope, br, SegmentStyle::dashed);
      add_segment(-1.0, b, slope, br, SegmentStyle::solid);
    } else {
      add_segment(a, b, slope, br, style_for(b));
    }
  };
  emit_half(p_min, std::min(1.0, p_max), slope_left, branch_left);
  emit_half(std::max(1.0, p_min), p_max, slope_right, branch_right);

  if (p_min <= 1.0 && p_max >= 1.0) {
    GlyphSpec kink;
    kink.p = 1.0;
    kink.sigma = 2.0;
    ReducedParams at_kink = reduce(tmpl);
    at_kink.power = 1.0;
    at_kink.s = 2.0;
    at_kink.domain = domain;
    kink.filled = classify(at_kink, basis, line_tol).verdict == Verdict::no_positive_supersolutions;
    rb.glyphs.push_back(kink);
  }
  if (rb.critical_regime && p_min <= -1.0 && p_max >= -1.0) {
    GlyphSpec dot;
    dot.p = -1.0;
    dot.sigma = line_at(-1.0).value;
    dot.filled = true;  // p = -1 on the line belongs to the nonexistence set
    rb.glyphs.push_back(dot);
    rb.sigma_at_pm1 = dot.sigma;
  }
  if (p_min <= 0.0 && p_max >= 0.0) rb.sigma_at_p0 = line_at(0.0).value;

  // sigma = 0 crossings of each branch, reported when they lie on the active half
  auto crossing = [&](double slope, bool left_half) -> std::optional<double> {
    if (slope == 0.0) return std::nullopt;
    const double p = 1.0 - 2.0 / slope;
    if (left_half ? p <= 1.0 : p >= 1.0) return p;
    return std::nullopt;
  };
  if (dbl) {
    if (g_lo != 0.0) rb.p_cross_lower = rb.p_cross_upper = 1.0 - 2.0 / g_lo;
  } else {
    rb.p_cross_lower = crossing(g_lo, side != LineSide::exterior_min);
    rb.p_cross_upper = crossing(g_hi, side == LineSide::exterior_min);
  }
  return rb;
}

// Classification over a Cartesian (p, sigma) lattice in the original
// variables, plus the exact boundary polyline (grid-independent).
inline RegionGrid region_grid(const ProblemParams& tmpl, double p_min, double p_max, double sigma_min,
                              double sigma_max, int p_steps, int sigma_steps,
                              Domain domain = Domain::exterior, double line_tol = 1e-12) {
  if (p_steps < 2 || sigma_steps < 2)
    throw std::invalid_argument("region_grid: need at least 2 nodes per axis");
  if (!(p_max > p_min) || !(sigma_max > sigma_min))
    throw std::invalid_argument("region_grid: empty parameter window");
  const spectral::SpectralBasis basis = spectral::basis_for_cone(tmpl.cone, tmpl.dim);
  RegionGrid grid;
  grid.domain = domain;
  grid.ps = linspace(p_min, p_max, p_steps);
  grid.sigmas = linspace(sigma_min, sigma_max, sigma_steps);
  grid.points.reserve(grid.ps.size() * grid.sigmas.size());
  for (double p : grid.ps) {
    for (double sig : grid.sigmas) {
      ProblemParams pp = tmpl;
      pp.power = p;
      pp.sigma = sig;
      ReducedParams rp = reduce(pp);
      rp.domain = domain;
      const Classification cls = classify(rp, basis, line_tol);
      RegionPoint pt;
      pt.p = p;
      pt.sigma = sig;
      pt.verdict = cls.verdict;
      pt.justification = cls.justification;
      pt.branch = cls.branch;
      // report the line in the original sigma coordinate
      if (cls.roots.real()) {
        const LineSide side = domain == Domain::exterior ? LineSide::exterior_min : LineSide::interior_max;
        pt.critical_line_value = critical_line_weighted(pp, basis.lambda(1), p, side, line_tol);
      }
      grid.points.push_back(pt);
    }
  }
  grid.boundary = region_boundary(tmpl, basis, domain, p_min, p_max, line_tol);
  return grid;
}

}  // namespace conecrit

#pragma once

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "conecrit/asymptotics.hpp"
#include "conecrit/barriers.hpp"
#include "conecrit/classifier.hpp"
#include "conecrit/hardy.hpp"
#include "conecrit/params.hpp"
#include "conecrit/spectral.hpp"
#include "conecrit/svg.hpp"

namespace conecrit::cli {

using svg::fmt17;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value configuration; flags override file entries.
struct RunConfig {
  int dim = 3;
  double A = 0.0, B = 0.0, C = 1.0, sigma = 0.0, p = 2.0, rho = 1.0;
  std::string cone = "full";  // full | arc | cap | lambda
  double theta0 = kPi / 2.0;
  double lambda1 = 0.0;
  std::string domain = "exterior";
  double line_tol = 1e-12;

  double p_min = -3.0, p_max = 4.0, sigma_min = -3.0, sigma_max = 5.0;
  int p_steps = 81, sigma_steps = 81;
  std::string csv_path = "region.csv";
  std::string svg_path = "region.svg";
  std::string fill_color = "#c9d7ef";
  std::string line_color = "#1f3d7a";

  int modes = 1;
  std::string potential;  // "lo,hi,value;lo,hi,value"

  double eps = 0.35;
  double mu_offset = 0.0;
  double rho0 = 2.718281828459045;
  std::string radii = "1e3,1e4,1e5,1e6";
  std::string sweep_case = "auto";  // auto | log | power

  std::string regime = "subcritical";  // subcritical | critical
  std::string check = "both";          // envelopes | oracle | both
};

namespace detail {

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw CliError("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw CliError("invalid numeric value for --" + key + ": '" + v + "'");
  }
}

inline int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw CliError("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw CliError("invalid integer value for --" + key + ": '" + v + "'");
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

// apply one key = value setting; throws CliError on unknown keys
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "N") cfg.dim = parse_int(key, value);
  else if (key == "A") cfg.A = parse_double(key, value);
  else if (key == "B") cfg.B = parse_double(key, value);
  else if (key == "C") cfg.C = parse_double(key, value);
  else if (key == "sigma") cfg.sigma = parse_double(key, value);
  else if (key == "p") cfg.p = parse_double(key, value);
  else if (key == "rho") cfg.rho = parse_double(key, value);
  else if (key == "cone") cfg.cone = value;
  else if (key == "theta0") cfg.theta0 = parse_double(key, value);
  else if (key == "arc") { cfg.cone = "arc"; cfg.theta0 = parse_double(key, value); }
  else if (key == "cap") { cfg.cone = "cap"; cfg.theta0 = parse_double(key, value); }
  else if (key == "lambda1") { cfg.lambda1 = parse_double(key, value); }
  else if (key == "domain") cfg.domain = value;
  else if (key == "line-tol") cfg.line_tol = parse_double(key, value);
  else if (key == "p-min") cfg.p_min = parse_double(key, value);
  else if (key == "p-max") cfg.p_max = parse_double(key, value);
  else if (key == "sigma-min") cfg.sigma_min = parse_double(key, value);
  else if (key == "sigma-max") cfg.sigma_max = parse_double(key, value);
  else if (key == "p-steps") cfg.p_steps = parse_int(key, value);
  else if (key == "sigma-steps") cfg.sigma_steps = parse_int(key, value);
  else if (key == "csv") cfg.csv_path = value;
  else if (key == "svg") cfg.svg_path = value;
  else if (key == "fill-color") cfg.fill_color = value;
  else if (key == "line-color") cfg.line_color = value;
  else if (key == "modes") cfg.modes = parse_int(key, value);
  else if (key == "potential") cfg.potential = value;
  else if (key == "eps") cfg.eps = parse_double(key, value);
  else if (key == "mu-offset") cfg.mu_offset = parse_double(key, value);
  else if (key == "rho0") cfg.rho0 = parse_double(key, value);
  else if (key == "radii") cfg.radii = value;
  else if (key == "case") cfg.sweep_case = value;
  else if (key == "regime") cfg.regime = value;
  else if (key == "check") cfg.check = value;
  else throw CliError("unknown option '" + key + "'");
}

inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw CliError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    apply_setting(cfg, key, value);
  }
}

inline RunConfig parse_options(const std::vector<std::string>& args) {
  RunConfig cfg;
  // config file first, flags afterwards so they override it
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CliError("--config needs a file path");
      load_config_file(cfg, args[i + 1]);
    }
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) throw CliError("expected a --flag, got '" + a + "'");
    const std::string key = a.substr(2);
    if (i + 1 >= args.size()) throw CliError("flag --" + key + " needs a value");
    const std::string value = args[++i];
    if (key == "config") continue;  // already consumed
    apply_setting(cfg, key, value);
  }
  return cfg;
}

inline ConeSpec make_cone(const RunConfig& cfg) {
  if (cfg.cone == "full") return ConeSpec::full_sphere();
  if (cfg.cone == "arc") return ConeSpec::arc(cfg.theta0);
  if (cfg.cone == "cap") return ConeSpec::cap(cfg.theta0);
  if (cfg.cone == "lambda") return ConeSpec::tabulated(cfg.lambda1);
  throw CliError("unknown cone '" + cfg.cone + "' (use full|arc|cap|lambda)");
}

inline ProblemParams make_problem(const RunConfig& cfg) {
  ProblemParams pp;
  pp.dim = cfg.dim;
  pp.weight_pow = cfg.A;
  pp.potential = cfg.B;
  pp.coupling = cfg.C;
  pp.sigma = cfg.sigma;
  pp.power = cfg.p;
  pp.cone = make_cone(cfg);
  pp.rho = cfg.rho;
  try {
    pp.validate();
  } catch (const std::invalid_argument& e) {
    throw CliError(e.what());
  }
  return pp;
}

inline Domain make_domain(const RunConfig& cfg) {
  if (cfg.domain == "exterior") return Domain::exterior;
  if (cfg.domain == "interior") return Domain::interior;
  throw CliError("unknown domain '" + cfg.domain + "' (use exterior|interior)");
}

inline std::vector<double> parse_radii(const std::string& s) {
  std::vector<double> out;
  for (const std::string& item : split(s, ','))
    if (!trim(item).empty()) out.push_back(parse_double("radii", trim(item)));
  return out;
}

inline std::vector<spectral::PotentialPiece> parse_potential(const std::string& s) {
  std::vector<spectral::PotentialPiece> out;
  if (trim(s).empty()) return out;
  for (const std::string& item : split(s, ';')) {
    const std::vector<std::string> f = split(trim(item), ',');
    if (f.size() != 3) throw CliError("potential pieces must be 'lo,hi,value' separated by ';'");
    out.push_back({parse_double("potential", trim(f[0])), parse_double("potential", trim(f[1])),
                   parse_double("potential", trim(f[2]))});
  }
  return out;
}

inline bool want_color(const std::ostream& out) {
  return &out == &std::cout && isatty(1) && std::getenv("NO_COLOR") == nullptr;
}

inline std::string colored(const std::ostream& out, Verdict v) {
  const char* name = verdict_name(v);
  if (!want_color(out)) return name;
  const char* code = v == Verdict::exists ? "\033[32m" : (v == Verdict::open_problem ? "\033[33m" : "\033[31m");
  return std::string(code) + name + "\033[0m";
}

inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::exists: return 0;
    case Verdict::no_positive_supersolutions: return 10;
    case Verdict::open_problem: return 20;
  }
  return 2;
}

}  // namespace detail

inline int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const ProblemParams pp = detail::make_problem(cfg);
  const Domain domain = detail::make_domain(cfg);
  const spectral::SpectralBasis basis = spectral::basis_for_cone(pp.cone, pp.dim);
  ReducedParams rp = reduce(pp);
  rp.domain = domain;
  const Classification cls = classify(rp, basis, cfg.line_tol);
  double lambda_orig = std::numeric_limits<double>::quiet_NaN();
  if (cls.roots.real()) {
    const LineSide side = domain == Domain::exterior ? LineSide::exterior_min : LineSide::interior_max;
    lambda_orig = critical_line_weighted(pp, basis.lambda(1), pp.power, side, cfg.line_tol);
  }
  out << "verdict: " << detail::colored(out, cls.verdict) << "\n";
  out << "justification: " << justification_name(cls.justification) << "\n";
  out << "critical line: Lambda(" << fmt17(pp.power) << ") = " << fmt17(lambda_orig) << " (branch "
      << branch_name(cls.branch) << ")\n";
  if (cls.verdict == Verdict::exists)
    out << "barrier family: " << barrier_family_name(cls.family) << "\n";
  const int code = detail::exit_code(cls.verdict);
  out << "RECORD cmd=classify verdict=" << verdict_name(cls.verdict) << " justification="
      << justification_name(cls.justification) << " Lambda=" << fmt17(lambda_orig) << " branch="
      << branch_name(cls.branch) << " exit=" << code << "\n";
  return code;
}

inline int cmd_region(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ProblemParams pp = detail::make_problem(cfg);
  const Domain domain = detail::make_domain(cfg);
  if (cfg.p_steps < 2 || cfg.sigma_steps < 2) throw CliError("need at least 2 grid nodes per axis");
  const RegionGrid grid = region_grid(pp, cfg.p_min, cfg.p_max, cfg.sigma_min, cfg.sigma_max,
                                      cfg.p_steps, cfg.sigma_steps, domain, cfg.line_tol);
  // CSV
  {
    std::ofstream csv(cfg.csv_path, std::ios::binary);
    if (!csv) {
      err << "cannot write CSV to '" << cfg.csv_path << "'\n";
      return 3;
    }
    csv << "p,sigma,verdict,justification,Lambda,branch\n";
    for (const RegionPoint& pt : grid.points) {
      csv << fmt17(pt.p) << "," << fmt17(pt.sigma) << "," << verdict_name(pt.verdict) << ","
          << justification_name(pt.justification) << "," << fmt17(pt.critical_line_value) << ","
          << branch_name(pt.branch) << "\n";
    }
  }
  // SVG
  {
    std::ofstream svg_file(cfg.svg_path, std::ios::binary);
    if (!svg_file) {
      err << "cannot write SVG to '" << cfg.svg_path << "'\n";
      return 3;
    }
    svg::PlotStyle style;
    style.fill_color = cfg.fill_color;
    style.line_color = cfg.line_color;
    const svg::RegionPlot plot(cfg.p_min, cfg.p_max, cfg.sigma_min, cfg.sigma_max);
    svg_file << plot.render(grid, style);
  }
  int none = 0, exist = 0, open = 0;
  for (const RegionPoint& pt : grid.points) {
    if (pt.verdict == Verdict::exists) ++exist;
    else if (pt.verdict == Verdict::open_problem) ++open;
    else ++none;
  }
  out << "region grid " << grid.ps.size() << " x " << grid.sigmas.size() << ": " << none
      << " nonexistence, " << exist << " existence, " << open << " open\n";
  out << "wrote " << cfg.csv_path << " and " << cfg.svg_path << "\n";
  out << "RECORD cmd=region cells=" << grid.points.size() << " nonexistence=" << none
      << " existence=" << exist << " open=" << open << " csv=" << cfg.csv_path << " svg="
      << cfg.svg_path << " exit=0\n";
  return 0;
}

inline int cmd_eigen(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  spectral::SpectralBasis basis;
  try {
    if (cfg.cone == "arc") {
      const auto pieces = detail::parse_potential(cfg.potential);
      basis = pieces.empty() ? spectral::eigen_arc(cfg.theta0, cfg.modes)
                             : spectral::eigen_arc_with_potential(cfg.theta0, pieces, cfg.modes);
    } else if (cfg.cone == "cap") {
      basis = spectral::eigen_cap(cfg.dim, cfg.theta0);
    } else if (cfg.cone == "full") {
      basis = spectral::full_sphere_basis(cfg.dim);
    } else if (cfg.cone == "lambda") {
      basis = spectral::tabulated_basis(cfg.dim, cfg.lambda1);
    } else {
      throw CliError("unknown cone '" + cfg.cone + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw CliError(e.what());
  }
  for (int k = 1; k <= basis.modes(); ++k)
    out << "lambda_" << k << " = " << fmt17(basis.lambda(k)) << "\n";
  out << "RECORD cmd=eigen lambda1=" << fmt17(basis.lambda(1)) << " modes=" << basis.modes()
      << " exit=0\n";
  return 0;
}

inline int cmd_verify_barrier(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const ProblemParams pp = detail::make_problem(cfg);
  const Domain domain = detail::make_domain(cfg);
  const spectral::SpectralBasis basis = spectral::basis_for_cone(pp.cone, pp.dim);
  if (!basis.has_profiles())
    throw CliError("barrier verification needs an angular profile; use a full, arc, or cap cone");
  ReducedParams rp = reduce(pp);
  rp.domain = domain;
  const Classification cls = classify(rp, basis, cfg.line_tol);
  if (cls.verdict != Verdict::exists) {
    out << "verdict: " << detail::colored(out, cls.verdict) << "; no barrier to verify\n";
    const int code = detail::exit_code(cls.verdict);
    out << "RECORD cmd=verify-barrier verdict=" << verdict_name(cls.verdict) << " exit=" << code
        << "\n";
    return code;
  }
  const BarrierSpec spec = barriers::construct_barrier(rp, cls, basis);
  const barriers::ResidualReport rep =
      barriers::residual(spec, rp, barriers::ResidualGrid::for_spec(spec));
  out << "barrier family: " << barrier_family_name(spec.family) << "\n";
  out << "tau = " << fmt17(spec.tau) << ", alpha = " << fmt17(spec.alpha) << ", beta = "
      << fmt17(spec.beta) << ", rho' = " << fmt17(spec.rho_prime) << "\n";
  out << "min residual = " << fmt17(rep.min_residual) << " at r = " << fmt17(rep.argmin_r) << "\n";
  if (rep.explicit_part_only)
    out << "note: certified on the explicit part; the solved auxiliary profile enters only "
           "through its positivity\n";
  const bool pass = rep.min_residual >= -rep.tolerance;
  out << "RECORD cmd=verify-barrier verdict=Exists family=" << barrier_family_name(spec.family)
      << " tau=" << fmt17(spec.tau) << " rho_prime=" << fmt17(spec.rho_prime) << " min_residual="
      << fmt17(rep.min_residual) << " exit=" << (pass ? 0 : 10) << "\n";
  return pass ? 0 : 10;
}

inline int cmd_hardy_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const spectral::SpectralBasis basis = spectral::basis_for_cone(detail::make_cone(cfg), cfg.dim);
  const double lambda1 = basis.lambda(1);
  const double threshold = hardy_constant(cfg.dim) + lambda1;
  const double mu = threshold + cfg.mu_offset;
  const std::vector<double> radii = detail::parse_radii(cfg.radii);
  if (radii.size() < 4) throw CliError("need at least 4 sweep radii");
  hardy::SweepCase which;
  if (cfg.sweep_case == "log") which = hardy::SweepCase::log_corrected;
  else if (cfg.sweep_case == "power") which = hardy::SweepCase::power_only;
  else if (cfg.sweep_case == "auto")
    which = cfg.mu_offset > cfg.line_tol ? hardy::SweepCase::power_only
                                         : hardy::SweepCase::log_corrected;
  else throw CliError("unknown case '" + cfg.sweep_case + "' (use auto|log|power)");

  hardy::SweepReport rep;
  try {
    rep = hardy::sharpness_sweep(cfg.dim, lambda1, cfg.rho0, mu, cfg.eps, radii, which);
  } catch (const std::invalid_argument& e) {
    throw CliError(e.what());
  }
  for (std::size_t i = 0; i < rep.radii.size(); ++i)
    out << "R = " << fmt17(rep.radii[i]) << "  total = " << fmt17(rep.totals[i]) << "\n";
  bool pass = false;
  if (which == hardy::SweepCase::power_only) {
    pass = rep.first_negative_R.has_value();
    if (pass) out << "form turns negative at R = " << fmt17(*rep.first_negative_R) << "\n";
    else out << "form stayed nonnegative over the sweep\n";
    // the nonexistence side expects negativity exactly when mu exceeds the threshold
    if (cfg.mu_offset <= 0.0) pass = !pass;
  } else if (cfg.eps > 0.25 + 1e-12) {
    const double expect = cfg.eps - 0.25;
    out << "fitted decrement rate per loglog R = " << fmt17(rep.fitted_rate) << " (expected "
        << fmt17(expect) << ")\n";
    pass = std::fabs(rep.fitted_rate - expect) <= 0.05 * expect;
  } else {
    pass = true;
    for (double t : rep.totals) pass = pass && t >= -1e-8;
    out << (pass ? "all totals nonnegative\n" : "found a negative total below tolerance\n");
  }
  out << "RECORD cmd=hardy-sweep eps=" << fmt17(cfg.eps) << " mu=" << fmt17(mu) << " rate="
      << fmt17(rep.fitted_rate) << " exit=" << (pass ? 0 : 10) << "\n";
  return pass ? 0 : 10;
}

inline int cmd_asymptotics_check(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const double th = cfg.cone == "arc" ? cfg.theta0 : kPi / 2.0;
  const double wlo = th / 4.0, whi = 3.0 * th / 4.0;
  const std::vector<double> radii = detail::parse_radii(cfg.radii);
  if (radii.size() < 2) throw CliError("need at least 2 radii");
  bool all_pass = true;
  auto report = [&](const char* name, bool ok) {
    out << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    all_pass = all_pass && ok;
  };

  if (cfg.check == "envelopes" || cfg.check == "both") {
    if (cfg.regime == "subcritical" || cfg.regime == "both") {
      const spectral::SpectralBasis basis = spectral::eigen_arc(th, 48);
      const asym::ComparisonFunction cf = asym::build_comparison(
          asym::default_bump(wlo, whi), basis, asym::ComparisonKind::lower);
      const Roots r1 = indicial_roots(2, 0.0, basis.lambda(1));
      const asym::EnvelopeReport rep = asym::two_sided_bound_check(
          [&](double r, double w) { return cf.eval(r, w); }, asym::EnvelopeRegime::subcritical,
          r1, wlo, whi, radii);
      out << "lower-comparison ratio drift = " << fmt17(rep.drift_lower) << "\n";
      report("subcritical envelope (stable minorant ratio)",
             rep.lower_ok && rep.upper_ok && rep.drift_lower < 0.01);
    }
    if (cfg.regime == "critical" || cfg.regime == "both") {
      const spectral::SpectralBasis shifted =
          spectral::arc_basis_shifted(th, (kPi / th) * (kPi / th), 48);
      std::vector<double> ratios;
      for (double R : radii) {
        const asym::ComparisonFunction cf = asym::build_comparison(
            asym::default_bump(wlo, whi), shifted, asym::ComparisonKind::upper_critical_R, R);
        double inf_k0 = std::numeric_limits<double>::infinity();
        for (double r : linspace(2.25, 2.75, 17))
          for (int j = 1; j < 17; ++j)
            inf_k0 = std::min(inf_k0, cf.eval(r, wlo + (whi - wlo) * j / 17.0));
        const double M = asym::annulus_sup(
            [&](double r, double w) { return cf.eval(r, w) / inf_k0; }, R, wlo, whi);
        ratios.push_back(M / std::log(R));
      }
      bool ok = true;
      double drift = 0.0;
      for (std::size_t i = 0; i + 1 < ratios.size(); ++i)
        drift = std::max(drift, std::fabs(ratios[i + 1] / ratios[i] - 1.0));
      ok = drift < 0.01;
      out << "critical-comparison ratio drift = " << fmt17(drift) << "\n";
      report("critical envelope (log-corrected majorant ratio)", ok);
    }
  }
  if (cfg.check == "oracle" || cfg.check == "both") {
    const spectral::SpectralBasis basis = spectral::eigen_arc(kPi, 4);
    const double rho = 3.0, R = 3e3;
    auto rhs = [](double r) { return std::pow(r, -2.0) / std::log(r); };
    const asym::RadialProfile orc =
        asym::radial_bvp_oracle(2, -hardy_constant(2), rhs, rho, R, 0.0, 0.0, 1024);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < orc.r.size(); ++i) {
      worst = std::max(worst, std::fabs(orc.v[i] - asym::eta1R_value(2, rho, R, orc.r[i])));
      scale = std::max(scale, std::fabs(asym::eta1R_value(2, rho, R, orc.r[i])));
    }
    out << "principal-mode oracle relative error = " << fmt17(worst / scale) << "\n";
    report("finite-difference oracle vs closed form (principal mode)", worst / scale <= 1e-4);

    const double d3 = std::sqrt(basis.lambda(3) - basis.lambda(1));
    const asym::RadialProfile orc3 =
        asym::radial_bvp_oracle(2, d3 * d3 - hardy_constant(2), rhs, rho, R, 0.0, 0.0, 1024);
    const asym::RadialProfile closed3 = asym::eta_profile_k(2, d3, 1.0, rho, R, orc3.r);
    double worst3 = 0.0, scale3 = 0.0;
    for (std::size_t i = 0; i < orc3.r.size(); ++i) {
      worst3 = std::max(worst3, std::fabs(orc3.v[i] - closed3.v[i]));
      scale3 = std::max(scale3, std::fabs(closed3.v[i]));
    }
    out << "third-mode oracle relative error = " << fmt17(worst3 / scale3) << "\n";
    report("finite-difference oracle vs closed form (third mode)", worst3 / scale3 <= 1e-4);
  }
  out << "RECORD cmd=asymptotics-check exit=" << (all_pass ? 0 : 10) << "\n";
  return all_pass ? 0 : 10;
}

inline void usage(std::ostream& out) {
  out << "conecrit <command> [--flag value ...]\n"
         "commands:\n"
         "  classify          verdict for one parameter tuple\n"
         "  region            phase diagram over a (p, sigma) window (CSV + SVG)\n"
         "  eigen             cross-section eigenvalues\n"
         "  verify-barrier    construct the existence barrier and check its residual\n"
         "  hardy-sweep       optimality sweep for the sharpened inequality\n"
         "  asymptotics-check growth envelopes and the radial ODE oracle\n"
         "common flags: --N --A --B --C --sigma --p --rho --cone full|arc|cap|lambda\n"
         "              --theta0 --lambda1 --domain exterior|interior --config FILE\n"
         "region flags: --p-min --p-max --sigma-min --sigma-max --p-steps --sigma-steps\n"
         "              --csv PATH --svg PATH --fill-color --line-color\n"
         "eigen flags:  --modes K --potential 'lo,hi,v;...' (or --arc T / --cap T)\n"
         "sweep flags:  --eps --mu-offset --rho0 --radii '1e3,1e4,...' --case auto|log|power\n"
         "asymptotics:  --regime subcritical|critical|both --check envelopes|oracle|both\n";
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args[0] == "--help" || args[0] == "help") {
    usage(args.empty() ? err : out);
    return args.empty() ? 2 : 0;
  }
  const std::string cmd = args[0];
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  try {
    const RunConfig cfg = detail::parse_options(rest);
    if (cmd == "classify") return cmd_classify(cfg, out, err);
    if (cmd == "region") return cmd_region(cfg, out, err);
    if (cmd == "eigen") return cmd_eigen(cfg, out, err);
    if (cmd == "verify-barrier") return cmd_verify_barrier(cfg, out, err);
    if (cmd == "hardy-sweep") return cmd_hardy_sweep(cfg, out, err);
    if (cmd == "asymptotics-check") return cmd_asymptotics_check(cfg, out, err);
    err << "unknown command '" << cmd << "'\n";
    usage(err);
    return 2;
  } catch (const CliError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace conecrit::cli

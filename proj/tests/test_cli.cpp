#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "conecrit/cli.hpp"

using namespace conecrit;
using Catch::Matchers::WithinAbs;

namespace {

struct RunResult {
  int code = 0;
  std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = cli::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string record_field(const std::string& text, const std::string& key) {
  const std::size_t rec = text.find("RECORD ");
  REQUIRE(rec != std::string::npos);
  const std::size_t pos = text.find(key + "=", rec);
  REQUIRE(pos != std::string::npos);
  const std::size_t start = pos + key.size() + 1;
  std::size_t end = text.find_first_of(" \n", start);
  return text.substr(start, end - start);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("classify exit codes follow the verdict") {
  RunResult r = run({"classify", "--N", "3", "--A", "0", "--B", "0", "--C", "1", "--sigma", "0",
                     "--p", "3", "--cone", "full"});
  REQUIRE(r.code == 10);
  REQUIRE(r.out.find("NoPositiveSupersolutions") != std::string::npos);

  r = run({"classify", "--N", "3", "--A", "0", "--B", "0", "--C", "1", "--sigma", "0", "--p",
           "3.5", "--cone", "full"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("verdict: Exists") != std::string::npos);

  // linear point below the spectral threshold
  r = run({"classify", "--N", "3", "--p", "1", "--sigma", "2", "--B", "0", "--C", "0.1", "--cone",
           "full"});
  REQUIRE(r.code == 0);

  // open problem: Hardy-threshold potential, p < -1 on the line, proper cone
  r = run({"classify", "--N", "3", "--B", "0.25", "--C", "1", "--p", "-2", "--sigma", "3.5",
           "--cone", "lambda", "--lambda1", "0"});
  REQUIRE(r.code == 20);
  REQUIRE(r.out.find("OpenProblem") != std::string::npos);
}

TEST_CASE("bad input exits with code 2") {
  REQUIRE(run({"classify", "--N", "3", "--C", "0", "--cone", "full"}).code == 2);
  REQUIRE(run({"classify", "--frobnicate", "1"}).code == 2);
  REQUIRE(run({"classify", "--p"}).code == 2);
  REQUIRE(run({"classify", "--p", "abc"}).code == 2);
  REQUIRE(run({"nonsense"}).code == 2);
  REQUIRE(run({}).code == 2);
  REQUIRE(run({"classify", "--cone", "cylinder"}).code == 2);
}

TEST_CASE("config file with flag overrides") {
  const auto cfgpath = temp_file("conecrit_cli_test.cfg");
  {
    std::ofstream f(cfgpath);
    f << "# defaults for the exterior-ball family\n";
    f << "N = 3\n";
    f << "cone = full\n";
    f << "sigma = 0\n";
    f << "p = 3\n";
  }
  RunResult r = run({"classify", "--config", cfgpath.string()});
  REQUIRE(r.code == 10);
  // flags override the file
  r = run({"classify", "--config", cfgpath.string(), "--p", "3.5"});
  REQUIRE(r.code == 0);
  // unknown config key is rejected
  {
    std::ofstream f(cfgpath);
    f << "N = 3\nwibble = 4\n";
  }
  r = run({"classify", "--config", cfgpath.string()});
  REQUIRE(r.code == 2);
  REQUIRE(r.err.find("wibble") != std::string::npos);
  std::filesystem::remove(cfgpath);
}

TEST_CASE("region emits schema-exact CSV and is byte-stable") {
  const auto csv = temp_file("conecrit_region.csv");
  const auto svgp = temp_file("conecrit_region.svg");
  const std::vector<std::string> args = {
      "region", "--N", "3", "--B", "-2", "--cone", "full", "--p-min", "-3", "--p-max", "4",
      "--sigma-min", "-3", "--sigma-max", "5", "--p-steps", "2", "--sigma-steps", "2",
      "--csv", csv.string(), "--svg", svgp.string()};
  REQUIRE(run(args).code == 0);
  const std::string first = slurp(csv);
  std::istringstream lines(first);
  std::string header;
  std::getline(lines, header);
  REQUIRE(header == "p,sigma,verdict,justification,Lambda,branch");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  REQUIRE(rows == 4);
  REQUIRE(first.find("\r") == std::string::npos);

  const std::string svg_first = slurp(svgp);
  REQUIRE(run(args).code == 0);
  REQUIRE(slurp(csv) == first);
  REQUIRE(slurp(svgp) == svg_first);

  // unwritable output path
  RunResult r = run({"region", "--csv", "/nonexistent-dir/x.csv", "--svg", svgp.string()});
  REQUIRE(r.code == 3);
  std::filesystem::remove(csv);
  std::filesystem::remove(svgp);
}

TEST_CASE("region SVG: pixel polyline is consistent with the published mapping") {
  const auto csv = temp_file("conecrit_region2.csv");
  const auto svgp = temp_file("conecrit_region2.svg");
  REQUIRE(run({"region", "--N", "3", "--B", "-2", "--cone", "full", "--p-min", "-3", "--p-max",
               "4", "--sigma-min", "-3", "--sigma-max", "5", "--p-steps", "9", "--sigma-steps",
               "9", "--csv", csv.string(), "--svg", svgp.string()})
              .code == 0);
  const std::string svg = slurp(svgp);
  auto meta = [&](const std::string& key) {
    const std::size_t pos = svg.find("\n" + key + "=");
    REQUIRE(pos != std::string::npos);
    const std::size_t start = pos + key.size() + 2;
    return std::stod(svg.substr(start, svg.find('\n', start) - start));
  };
  const double pmin = meta("p_min"), pmax = meta("p_max");
  const double smin = meta("sigma_min"), smax = meta("sigma_max");
  const double margin = meta("px_margin"), span = meta("px_span");
  REQUIRE_THAT(meta("gamma_minus"), WithinAbs(-2.0, 1e-12));
  REQUIRE_THAT(meta("gamma_plus"), WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(meta("kink_p"), WithinAbs(1.0, 0.0));
  REQUIRE_THAT(meta("kink_sigma"), WithinAbs(2.0, 0.0));
  REQUIRE_THAT(meta("sigma_at_p0"), WithinAbs(1.0, 1e-12));  // 2 - gamma_plus

  // first polyline: pixel coordinates invert to the data attributes
  const std::size_t poly = svg.find("<polyline points=\"");
  REQUIRE(poly != std::string::npos);
  const std::size_t q0 = poly + std::string("<polyline points=\"").size();
  const std::string pts = svg.substr(q0, svg.find('"', q0) - q0);
  double x0, y0, x1, y1;
  REQUIRE(std::sscanf(pts.c_str(), "%lf,%lf %lf,%lf", &x0, &y0, &x1, &y1) == 4);
  auto attr = [&](const std::string& name) {
    const std::size_t pos = svg.find(name + "=\"", poly);
    REQUIRE(pos != std::string::npos);
    const std::size_t start = pos + name.size() + 2;
    return std::stod(svg.substr(start, svg.find('"', start) - start));
  };
  const double inv_p0 = pmin + (x0 - margin) / span * (pmax - pmin);
  const double inv_s0 = smin + (800.0 - margin - y0) / span * (smax - smin);
  REQUIRE_THAT(inv_p0, WithinAbs(attr("data-p0"), 1e-9));
  REQUIRE_THAT(inv_s0, WithinAbs(attr("data-sigma0"), 1e-9));
  const double inv_p1 = pmin + (x1 - margin) / span * (pmax - pmin);
  const double inv_s1 = smin + (800.0 - margin - y1) / span * (smax - smin);
  REQUIRE_THAT(inv_p1, WithinAbs(attr("data-p1"), 1e-9));
  REQUIRE_THAT(inv_s1, WithinAbs(attr("data-sigma1"), 1e-9));

  // kink glyph is present with exact coordinates
  REQUIRE(svg.find("data-p=\"1\" data-sigma=\"2\"") != std::string::npos);
  std::filesystem::remove(csv);
  std::filesystem::remove(svgp);
}

TEST_CASE("eigen subcommand") {
  RunResult r = run({"eigen", "--N", "2", "--arc", "1.5707963"});
  REQUIRE(r.code == 0);
  REQUIRE_THAT(std::stod(record_field(r.out, "lambda1")), WithinAbs(4.0, 1e-5));

  r = run({"eigen", "--N", "3", "--cap", "1.5707963267948966"});
  REQUIRE(r.code == 0);
  REQUIRE_THAT(std::stod(record_field(r.out, "lambda1")), WithinAbs(2.0, 1e-4));

  r = run({"eigen", "--N", "2", "--arc", "3.14159265358979", "--potential", "0,1.5707963,0.1",
           "--modes", "2"});
  REQUIRE(r.code == 0);
  const double l1 = std::stod(record_field(r.out, "lambda1"));
  REQUIRE(l1 > 0.9);
  REQUIRE(l1 < 1.0);

  REQUIRE(run({"eigen", "--N", "2", "--arc", "-1"}).code == 2);
}

TEST_CASE("verify-barrier subcommand") {
  RunResult r = run({"verify-barrier", "--N", "3", "--B", "0", "--C", "1", "--sigma", "1", "--p",
                     "3", "--cone", "full"});
  REQUIRE(r.code == 0);
  const double min_res = std::stod(record_field(r.out, "min_residual"));
  REQUIRE(min_res >= -1e-8);
  REQUIRE(r.out.find("SeparatedPower") != std::string::npos);

  // nonexistence region: nothing to verify
  r = run({"verify-barrier", "--N", "3", "--sigma", "0", "--p", "3", "--cone", "full"});
  REQUIRE(r.code == 10);

  // tabulated cones carry no angular profile
  r = run({"verify-barrier", "--N", "3", "--sigma", "0", "--p", "3.5", "--cone", "lambda"});
  REQUIRE(r.code == 2);
}

TEST_CASE("hardy-sweep subcommand") {
  RunResult r = run({"hardy-sweep", "--eps", "0.35", "--N", "3", "--cone", "full"});
  REQUIRE(r.code == 0);
  REQUIRE_THAT(std::stod(record_field(r.out, "rate")), WithinAbs(0.1, 0.005));

  r = run({"hardy-sweep", "--eps", "0.25", "--N", "3", "--cone", "full"});
  REQUIRE(r.code == 0);

  r = run({"hardy-sweep", "--mu-offset", "0.1", "--eps", "0", "--N", "3", "--cone", "full",
           "--radii", "1e3,1e6,1e9,1e12,1e14"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("negative at R") != std::string::npos);

  REQUIRE(run({"hardy-sweep", "--radii", "1e3,1e4"}).code == 2);
}

TEST_CASE("asymptotics-check subcommand") {
  RunResult r = run({"asymptotics-check", "--check", "oracle"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("[PASS]") != std::string::npos);
  REQUIRE(r.out.find("[FAIL]") == std::string::npos);

  r = run({"asymptotics-check", "--check", "envelopes", "--regime", "both"});
  REQUIRE(r.code == 0);
}

TEST_CASE("help text") {
  const RunResult r = run({"--help"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("classify") != std::string::npos);
}

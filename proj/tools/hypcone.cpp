#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hypcone/delaunay.hpp"
#include "hypcone/error.hpp"
#include "hypcone/holonomy.hpp"
#include "hypcone/lemmas.hpp"
#include "hypcone/poisson.hpp"
#include "hypcone/sl2.hpp"
#include "hypcone/surface.hpp"

using namespace hypcone;

namespace {

constexpr std::uint64_t kDefaultSeed = SuiteOptions{}.seed;

enum Exit { kOk = 0, kInput = 1, kWall = 2, kNumerical = 3 };

struct RunConfig {
  std::string command;
  std::string input;
  bool structured = false;
  std::map<std::string, double> tol{
      {"radical", 1e-8}, {"jacobi", 1e-5},   {"rank", kRankThreshold}, {"holonomy", 1e-8},
      {"delaunay", kDelaunayTolerance},      {"lemma", 1e-9},          {"log", 1e-6}};
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Ordered key/value report; text and structured modes differ only in layout.
class Report {
 public:
  void add(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
  void add(const std::string& key, double value) { add(key, num(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  void block(const std::string& title, const std::string& text) { blocks_.emplace_back(title, text); }

  void print(bool structured) const {
    for (const auto& [k, v] : rows_) std::cout << k << (structured ? "=" : ": ") << v << '\n';
    for (const auto& [title, text] : blocks_) {
      std::size_t start = 0, row = 0;
      if (!structured) std::cout << title << ":\n";
      while (start < text.size()) {
        const std::size_t end = text.find('\n', start);
        const std::string line = text.substr(start, end - start);
        if (structured) {
          std::cout << title << '.' << row++ << '=' << line << '\n';
        } else {
          std::cout << "  " << line << '\n';
        }
        if (end == std::string::npos) break;
        start = end + 1;
      }
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
  std::vector<std::pair<std::string, std::string>> blocks_;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::NonManifold:
    case ErrorKind::Disconnected:
    case ErrorKind::TriangleInequality:
    case ErrorKind::NonPositiveLength:
    case ErrorKind::NotAdmissible:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::OutOfRange:
      return kInput;
    case ErrorKind::WallAngle:
    case ErrorKind::CoincidentFixedPoints:
    case ErrorKind::DegenerateDirection:
    case ErrorKind::NumericalCollapse:
    case ErrorKind::UnflippableConfiguration:
      return kWall;
    default:
      return kNumerical;
  }
}

ConeSurface load(const RunConfig& config) {
  if (config.input.empty()) throw Error(ErrorKind::ParseError, "--input is required");
  return ConeSurface::build(load_surface_file(config.input));
}

void describe_surface(const ConeSurface& s, Report& r) {
  r.add("genus", s.genus());
  r.add("n", s.vertex_count());
  r.add("N", s.edge_count());
  r.add("triangles", s.triangle_count());
}

int cmd_validate(const RunConfig& config, Report& r) {
  const ConeSurface s = load(config);
  r.add("check.manifold", std::string("ok"));
  r.add("check.connected", std::string("ok"));
  r.add("check.triangle_inequality", std::string("ok"));
  describe_surface(s, r);
  const StratumReport stratum = classify_angles(s.angle_data());
  r.add("chi", stratum.chi);
  r.add("hyperbolic", stratum.hyperbolic);
  r.add("flat", stratum.flat);
  r.add("generic", stratum.generic);
  r.add("small", stratum.small);
  r.add("area", s.area());
  for (int v = 0; v < s.vertex_count(); ++v) r.add("theta." + std::to_string(v), s.cone_angle(v));
  r.add("status", std::string(stratum.hyperbolic ? "valid" : "not-hyperbolic"));
  return stratum.hyperbolic ? kOk : kInput;
}

int cmd_poisson(const RunConfig& config, Report& r) {
  const ConeSurface s = load(config);
  describe_surface(s, r);
  for (const auto& fan : s.fans()) {
    r.add("wall_margin." + std::to_string(fan.vertex), std::abs(std::sin(0.5 * fan.total)));
  }
  const PoissonMatrix p = eta_matrix(s);
  const double antisymmetry = (p.entries + p.entries.transpose()).cwiseAbs().maxCoeff();
  const RadicalReport radical = radical_check(p, angle_gradients(s));
  const int rank = numerical_rank(p.entries, config.tol.at("rank"));
  const int expected_rank = 6 * s.genus() - 6 + 2 * s.vertex_count();
  r.add("antisymmetry", antisymmetry);
  r.add("rank", rank);
  r.add("expected_rank", expected_rank);
  for (std::size_t h = 0; h < radical.residuals.size(); ++h) {
    r.add("radical." + std::to_string(h), radical.residuals[h]);
  }
  r.add("radical.max", radical.max_residual);
  JacobiOptions options;
  options.jobs = config.jobs;
  const JacobiReport jacobi = jacobi_check(s, options);
  r.add("jacobi", jacobi.residual);
  r.add("jacobi.raw", jacobi.raw);
  r.add("jacobi.triples", jacobi.triples);
  r.add("wp_note", wp_comparison_note());
  r.block("P", dump_matrix(p.entries));
  const bool ok = antisymmetry == 0.0 && rank == expected_rank &&
                  radical.max_residual < config.tol.at("radical") &&
                  jacobi.residual < config.tol.at("jacobi");
  r.add("status", std::string(ok ? "pass" : "fail"));
  return ok ? kOk : kNumerical;
}

int cmd_holonomy(const RunConfig& config, Report& r) {
  const ConeSurface s = load(config);
  describe_surface(s, r);
  const HolonomyAtlas atlas = develop(s);
  double worst_trace = 0.0, worst_length = 0.0;
  for (int v = 0; v < s.vertex_count(); ++v) {
    const std::string key = "vertex." + std::to_string(v);
    const double theta = s.cone_angle(v);
    const Sl2Matrix h = vertex_holonomy(atlas, v);
    const double expected = 2.0 * std::abs(std::cos(0.5 * theta));
    const double err = std::abs(std::abs(h.trace()) - expected);
    worst_trace = std::max(worst_trace, err);
    r.add(key + ".theta", theta);
    r.add(key + ".trace", std::abs(h.trace()));
    r.add(key + ".rotation", classify(h).parameter);
    r.add(key + ".error", err);
  }
  const auto& ids = s.topology().edge_ids();
  for (int e = 0; e < s.edge_count(); ++e) {
    const std::string key = "edge." + ids[e];
    const double recovered = alength_from_fixed_points(atlas, e);
    const double err = std::abs(recovered - s.length(e));
    worst_length = std::max(worst_length, err);
    r.add(key + ".length", s.length(e));
    r.add(key + ".recovered", recovered);
    r.add(key + ".error", err);
  }
  r.add("trace_error.max", worst_trace);
  r.add("length_error.max", worst_length);
  r.block("atlas", dump_atlas(atlas));
  const bool ok = worst_trace < config.tol.at("holonomy") && worst_length < config.tol.at("holonomy");
  r.add("status", std::string(ok ? "pass" : "fail"));
  return ok ? kOk : kNumerical;
}

int cmd_delaunay(const RunConfig& config, Report& r) {
  const ConeSurface s = load(config);
  describe_surface(s, r);
  const double tol = config.tol.at("delaunay");
  const DelaunayResult result = make_delaunay(s, tol);
  const std::vector<double> psi = edge_invariants(result.surface);
  const auto& ids = result.surface.topology().edge_ids();
  r.add("flips", static_cast<int>(result.moves.size()));
  for (int e = 0; e < result.surface.edge_count(); ++e) r.add("psi." + ids[e], psi[e]);
  const double min_psi = *std::min_element(psi.begin(), psi.end());
  r.add("psi.min", min_psi);
  if (!result.moves.empty()) r.block("moves", format_move_log(result.moves));
  r.block("surface", serialize_surface(result.surface));
  const bool ok = min_psi >= -tol;
  r.add("status", std::string(ok ? "pass" : "fail"));
  return ok ? kOk : kNumerical;
}

int cmd_selftest(const RunConfig& config, Report& r) {
  SuiteOptions options;
  options.seed = config.seed;
  options.tolerance = config.tol.at("lemma");
  options.log_tolerance = config.tol.at("log");
  r.add("seed", std::to_string(config.seed));
  bool ok = true;
  for (const SuiteResult& suite : run_all_suites(options)) {
    r.add(suite.name + ".count", suite.count);
    r.add(suite.name + ".max_residual", suite.max_residual);
    r.add(suite.name + ".tolerance", suite.tolerance);
    if (suite.name == "killing") r.add("killing.constant", suite.value);
    r.add(suite.name + ".pass", suite.passed());
    ok = ok && suite.passed();
  }
  const Sl2Vector h = Sl2Vector::H(), e_plus_f{0.0, 1.0, 1.0}, e_minus_f{0.0, 1.0, -1.0};
  r.add("basis.HH", trace_form(h, h));
  r.add("basis.(E+F)(E+F)", trace_form(e_plus_f, e_plus_f));
  r.add("basis.(E-F)(E-F)", trace_form(e_minus_f, e_minus_f));
  r.add("status", std::string(ok ? "pass" : "fail"));
  return ok ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cone-surface holonomy, Poisson bivector and Delaunay checks"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "text";
  std::vector<std::string> overrides;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "Build the surface and report angles and stratum"},
      {"poisson", "Evaluate the bivector and certify radical, rank and Jacobi identity"},
      {"holonomy", "Develop the surface and check vertex holonomies and length recovery"},
      {"delaunay", "Flip to a locally Delaunay triangulation"},
      {"selftest", "Run the randomized identity suites"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (name != "selftest") sub->add_option("--input", config.input, "Surface file")->required();
    sub->add_option("--format", format, "Output layout")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--tol", overrides, "Tolerance override KEY=VAL (repeatable)");
    sub->add_option("--seed", config.seed, "Seed for randomized suites");
    sub->add_option("--jobs", config.jobs, "Worker threads for finite differences")
        ->check(CLI::PositiveNumber);
    sub->final_callback([&config, name = name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  config.structured = format == "structured";

  Report report;
  report.add("command", config.command);
  try {
    for (const std::string& item : overrides) {
      const auto eq = item.find('=');
      const std::string key = item.substr(0, eq);
      if (eq == std::string::npos || !config.tol.count(key)) {
        throw Error(ErrorKind::ParseError, "unknown tolerance override '" + item + "'");
      }
      try {
        std::size_t used = 0;
        const double value = std::stod(item.substr(eq + 1), &used);
        if (used != item.size() - eq - 1 || !(value > 0.0)) throw std::invalid_argument(item);
        config.tol[key] = value;
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::ParseError, "bad tolerance value in '" + item + "'");
      }
    }
    int code = kOk;
    if (config.command == "validate") code = cmd_validate(config, report);
    if (config.command == "poisson") code = cmd_poisson(config, report);
    if (config.command == "holonomy") code = cmd_holonomy(config, report);
    if (config.command == "delaunay") code = cmd_delaunay(config, report);
    if (config.command == "selftest") code = cmd_selftest(config, report);
    report.print(config.structured);
    return code;
  } catch (const Error& err) {
    report.add("status", std::string("error"));
    report.add("error.kind", std::string(to_string(err.kind())));
    report.add("error.detail", std::string(err.what()));
    report.print(config.structured);
    return exit_code(err.kind());
  } catch (const std::exception& err) {
    report.add("status", std::string("error"));
    report.add("error.kind", std::string("Internal"));
    report.add("error.detail", std::string(err.what()));
    report.print(config.structured);
    return kNumerical;
  }
}

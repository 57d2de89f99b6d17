#include "nkcp3/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nkcp3/curve.hpp"
#include "nkcp3/curve_json.hpp"
#include "nkcp3/divisor.hpp"
#include "nkcp3/error.hpp"
#include "nkcp3/s4.hpp"

namespace nkcp3::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  Real tol = 1e-7;
  int grid_n = 41;
  Real grid_width = 1.5;
  Real fd_step = kDefaultFdStep;
  std::string charts = "0,inf";
  int jobs = 1;
  std::string format = "json";

  GridSpec grid() const {
    GridSpec g;
    g.samples = grid_n;
    g.half_width = grid_width;
    g.charts.clear();
    std::stringstream ss(charts);
    for (std::string tok; std::getline(ss, tok, ',');) {
      if (tok == "0") g.charts.push_back(Chart::kZero);
      else if (tok == "inf") g.charts.push_back(Chart::kInfinity);
      else throw Error(ErrorKind::kInvalidArgument, "unknown chart \"" + tok + "\" (expected 0 or inf)");
    }
    g.validate();
    return g;
  }

  void validate() const {
    if (!(tol > 0.0 && tol < 1e-2)) throw Error(ErrorKind::kInvalidArgument, "--tol must lie in (0, 1e-2)");
    if (jobs < 1) throw Error(ErrorKind::kInvalidArgument, "--jobs must be at least 1");
    grid();
  }
};

// Parallelism is left out on purpose: reports must not depend on it.
json grid_json(const GridSpec& g) {
  json charts = json::array();
  for (Chart c : g.charts) charts.push_back(std::string(to_string(c)));
  return {{"half_width", g.half_width}, {"samples", g.samples}, {"charts", charts}};
}

json config_json(const RunConfig& cfg) { return {{"tol", cfg.tol}, {"fd_step", cfg.fd_step}, {"format", cfg.format}}; }

json with_config(json report, const RunConfig& cfg) {
  report["grid"] = grid_json(cfg.grid());
  report["config"] = config_json(cfg);
  return report;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, path + ": " + e.what());
  }
}

CurveExpr load_curve(const std::string& path) { return curve_from_json(read_json(path)); }

void emit(std::ostream& out, const std::string& text, const std::string& path) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kIo, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorKind::kIo, "write failed for " + path);
}

Complex constant_arg(const std::string& text, const char* what) {
  const RatExpr e = parse_expr(text);
  if (!e.is_constant()) throw Error(ErrorKind::kInvalidArgument, std::string(what) + " must be a constant, got \"" + text + "\"");
  return e.value();
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::kParse:
    case ErrorKind::kIo:
    case ErrorKind::kInvalidArgument:
      return kUsage;
    default:
      return kNumeric;
  }
}

int report_error(std::ostream& out, std::string_view kind, const std::string& detail, int code) {
  out << json{{"error", {{"kind", kind}, {"detail", detail}}}}.dump(2) << '\n';
  return code;
}

struct GenerateArgs {
  std::string f, g, partner_of, output;
  std::vector<std::string> fiber, components;
};

json cmd_generate(const GenerateArgs& a) {
  const int modes = (!a.f.empty() || !a.g.empty()) + !a.fiber.empty() + !a.components.empty() + !a.partner_of.empty();
  if (modes != 1) throw Error(ErrorKind::kInvalidArgument, "generate needs exactly one of --f/--g, --fiber, --explicit, --partner-of");
  if (!a.partner_of.empty()) {
    json inner = read_json(a.partner_of);
    CurveExpr::partner(curve_from_json(inner));
    return {{"kind", "partner"}, {"inner", inner}};
  }
  if (!a.fiber.empty()) {
    HVec v;
    for (int k = 0; k < 4; ++k) v.c[k] = constant_arg(a.fiber[k], "fiber base entry");
    return curve_to_json(CurveExpr::fiber(v));
  }
  if (!a.components.empty()) {
    std::array<RatExpr, 4> e;
    for (int k = 0; k < 4; ++k) e[k] = parse_expr(a.components[k]);
    return {{"kind", "explicit"}, {"components", a.components}};
  }
  if (a.f.empty() || a.g.empty()) throw Error(ErrorKind::kInvalidArgument, "--f and --g must be given together");
  // Validate, then keep the user's spelling of the data.
  CurveExpr::weierstrass(parse_expr(a.f), parse_expr(a.g));
  return {{"kind", "weierstrass"}, {"f", a.f}, {"g", a.g}};
}

json nullable(const std::optional<Real>& v) { return v ? json(*v) : json(nullptr); }

std::optional<Invariant> parse_invariant(const std::string& s) {
  if (s == "I1") return Invariant::kI1;
  if (s == "I2") return Invariant::kI2;
  if (s == "II") return Invariant::kII;
  return std::nullopt;
}

json vec_json(const HVec& v) {
  json a = json::array();
  for (Complex c : v.c) a.push_back({c.real(), c.imag()});
  return a;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudoholomorphic curves in the nearly Kahler CP^3", "nkcp3"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "Vanishing tolerance for residuals and densities")->capture_default_str();
  app.add_option("--grid-n", cfg.grid_n, "Samples per grid side")->capture_default_str();
  app.add_option("--grid-width", cfg.grid_width, "Grid half-width in each chart")->capture_default_str();
  app.add_option("--fd-step", cfg.fd_step, "Finite-difference step for S^4 residuals")->capture_default_str();
  app.add_option("--charts", cfg.charts, "Charts to sample: 0, inf or 0,inf")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads for grid sweeps")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a curve file");
  generate->add_option("--f", gen.f, "Weierstrass datum f(z)");
  generate->add_option("--g", gen.g, "Weierstrass datum g(z), nonconstant");
  generate->add_option("--fiber", gen.fiber, "Fiber through the given base vector (4 constants)")->expected(4);
  generate->add_option("--explicit", gen.components, "Explicit lift (4 expressions in z, zb)")->expected(4);
  generate->add_option("--partner-of", gen.partner_of, "Wrap a curve file in the partner map");
  generate->add_option("-o,--output", gen.output, "Output file (default stdout)");

  std::string curve_path;
  auto* check = app.add_subcommand("check", "Classify a curve and check pseudoholomorphicity");
  check->alias("classify");
  check->add_option("curve", curve_path, "Curve file")->required();

  std::string invariant_name;
  auto* divisors = app.add_subcommand("divisors", "Zeros and orders of an invariant");
  divisors->add_option("curve", curve_path, "Curve file")->required();
  divisors->add_option("--invariant", invariant_name, "I1, I2 or II")->required()->check(CLI::IsMember({"I1", "I2", "II"}));

  auto* chern = app.add_subcommand("chern", "Degree of the pulled-back dual tautological bundle");
  chern->add_option("curve", curve_path, "Curve file")->required();

  std::string output;
  auto* project = app.add_subcommand("project", "Sample the S^4 projection");
  project->add_option("curve", curve_path, "Curve file")->required();
  project->add_option("-o,--output", output, "Output file (default stdout)");

  std::string at, chart_name = "0";
  auto* partner = app.add_subcommand("partner", "Partner curve file, or the partner point at --at");
  partner->add_option("curve", curve_path, "Curve file")->required();
  partner->add_option("--at", at, "Evaluation point, e.g. 0.3+0.1i");
  partner->add_option("--chart", chart_name, "Chart of --at")->check(CLI::IsMember({"0", "inf"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    return report_error(out, "usage", e.what(), kUsage);
  }

  try {
    cfg.validate();
    const GridSpec grid = cfg.grid();
    if (*generate) {
      emit(out, cmd_generate(gen).dump(2) + "\n", gen.output);
      return kOk;
    }
    if (*check) {
      const Classification cl = classify(load_curve(curve_path), grid, cfg.tol, cfg.jobs);
      json r = {{"classification", std::string(to_string(cl.verdict))},
                {"max_ph_residual", cl.max_ph_residual},
                {"max_i1", cl.max_i1},
                {"max_i2", cl.max_i2},
                {"max_torsion", nullable(cl.max_torsion)},
                {"evaluated", cl.evaluated},
                {"skipped", cl.skipped}};
      out << with_config(r, cfg).dump(2) << '\n';
      return cl.verdict == Verdict::kNotPseudoholomorphic ? kCheckFailed : kOk;
    }
    if (*divisors) {
      const DivisorReport d = invariant_divisor(load_curve(curve_path), *parse_invariant(invariant_name), grid, cfg.tol, cfg.jobs);
      out << with_config(to_json(d), cfg).dump(2) << '\n';
      return kOk;
    }
    if (*chern) {
      const ChernDegree d = chern_degree(load_curve(curve_path), grid);
      json r = {{"bundle", "tautological_dual"}, {"degree", d.degree}, {"drift", d.drift}, {"raw", d.raw}};
      out << with_config(r, cfg).dump(2) << '\n';
      return kOk;
    }
    if (*project) {
      const auto rows = sample_surface(load_curve(curve_path), grid, cfg.fd_step, cfg.jobs);
      if (cfg.format == "csv") {
        emit(out, surface_csv(rows), output);
        return kOk;
      }
      json arr = json::array();
      for (const SurfaceRow& row : rows) {
        arr.push_back({{"chart", std::string(to_string(row.chart))},
                       {"z", {row.sample.z.real(), row.sample.z.imag()}},
                       {"s", row.sample.point.x},
                       {"E", row.sample.E},
                       {"F", row.sample.F},
                       {"G", row.sample.G},
                       {"conformal_residual", nullable(row.conformal)},
                       {"harmonic_residual", nullable(row.harmonic)}});
      }
      emit(out, with_config(json{{"samples", arr}}, cfg).dump(2) + "\n", output);
      return kOk;
    }
    if (*partner) {
      const json inner = read_json(curve_path);
      const CurveExpr c = curve_from_json(inner);
      if (at.empty()) {
        CurveExpr::partner(c);
        out << json{{"kind", "partner"}, {"inner", inner}}.dump(2) << '\n';
        return kOk;
      }
      const Complex z = constant_arg(at, "--at");
      const Chart chart = chart_name == "inf" ? Chart::kInfinity : Chart::kZero;
      const ProjPoint w = partner_point(c, z, chart);
      const HVec u = eval_jet(c, z, 0, chart).value().normalized();
      json r = {{"z", {z.real(), z.imag()}},
                {"chart", chart_name},
                {"point", vec_json(u)},
                {"partner", vec_json(w.rep())},
                {"flag_defect", quat_pair(u, w.rep()).abs()},
                {"antipodal_residual", antipodal_check(c, z, chart)}};
      out << r.dump(2) << '\n';
      return kOk;
    }
  } catch (const ParseError& e) {
    return report_error(out, to_string(e.kind()), e.what(), kUsage);
  } catch (const Error& e) {
    return report_error(out, to_string(e.kind()), e.what(), exit_code_for(e.kind()));
  } catch (const std::exception& e) {
    return report_error(out, "internal", e.what(), kNumeric);
  }
  return kUsage;
}

}  // namespace nkcp3::cli

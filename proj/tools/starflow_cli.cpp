// Command-line driver: run, counterexample, verify-subsolution, fit-rate, oracle-check.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "starflow/config.hpp"
#include "starflow/counterexample.hpp"
#include "starflow/error.hpp"
#include "starflow/geometry.hpp"
#include "starflow/oracle.hpp"
#include "starflow/run.hpp"
#include "starflow/series_io.hpp"
#include "starflow/shapes.hpp"

namespace fs = std::filesystem;
using namespace starflow;
using json = nlohmann::ordered_json;

namespace {

void row(const std::string& key, double value) { std::cout << key << '=' << format_double(value) << '\n'; }
void row(const std::string& key, const std::string& value) { std::cout << key << '=' << value << '\n'; }

Exec parse_exec(const std::string& s) {
  if (s == "serial") return Exec::serial;
  if (s == "parallel") return Exec::parallel;
  throw ConfigError("exec: expected serial or parallel");
}

// Flags shared by every subcommand that builds a grid and an initial shape.
struct ShapeFlags {
  std::optional<std::string> shape, grid, exec;
  std::optional<double> radius, eps, offset, elongation;
  std::optional<int> mode, n, n_polar, n_azimuth;

  void attach(CLI::App& app) {
    app.add_option("--shape", shape, "sphere | perturbed_sphere | offcenter_ovaloid | custom_harmonics");
    app.add_option("--radius", radius, "base radius");
    app.add_option("--eps", eps, "perturbation amplitude");
    app.add_option("--mode", mode, "Legendre degree of the perturbation");
    app.add_option("--offset", offset, "ovaloid centre offset");
    app.add_option("--elongation", elongation, "ovaloid polar/equatorial axis ratio");
    app.add_option("--grid", grid, "axisymmetric | full2d");
    app.add_option("--n", n, "hypersurface dimension");
    app.add_option("--n-polar", n_polar, "polar cells N");
    app.add_option("--n-azimuth", n_azimuth, "azimuthal cells M (full2d)");
    app.add_option("--exec", exec, "serial | parallel");
  }

  void apply(RunConfig& c) const {
    if (shape) c.shape.kind = shape_kind_from_string(*shape);
    if (radius) c.shape.radius = *radius;
    if (eps) c.shape.eps = *eps;
    if (mode) c.shape.mode = *mode;
    if (offset) c.shape.offset = *offset;
    if (elongation) c.shape.elongation = *elongation;
    if (grid) c.flow.grid.mode = grid_mode_from_string(*grid);
    if (n) c.flow.grid.n = *n;
    if (n_polar) c.flow.grid.n_polar = *n_polar;
    if (n_azimuth) c.flow.grid.n_azimuth = *n_azimuth;
    if (exec) c.flow.exec = parse_exec(*exec);
  }
};

struct RunFlags {
  ShapeFlags shape;
  std::string config_path, manifest_path, out_dir = ".", prefix = "run";
  std::optional<double> alpha, t_end, cfl, output_interval, r_min_floor;
  bool normalized = false, unnormalized = false;
};

int cmd_run(const RunFlags& f, const std::string& command_line) {
  RunConfig config;
  if (!f.manifest_path.empty()) {
    config = read_manifest(f.manifest_path).config;
  } else if (!f.config_path.empty()) {
    config = load_config(f.config_path);
  }
  f.shape.apply(config);
  if (f.alpha) config.flow.alpha = *f.alpha;
  if (f.t_end) config.flow.t_end = *f.t_end;
  if (f.cfl) config.flow.cfl_safety = *f.cfl;
  if (f.output_interval) config.flow.output_interval = *f.output_interval;
  if (f.r_min_floor) config.flow.r_min_floor = *f.r_min_floor;
  if (f.normalized) config.flow.normalized = true;
  if (f.unnormalized) config.flow.normalized = false;
  finalize_config(config);
  for (const std::string& w : config.warnings) std::cerr << "warning: " << w << '\n';

  RunManifest manifest;
  manifest.config = config;
  manifest.command = command_line;
  manifest.version = STARFLOW_VERSION;
  manifest.started_at = utc_timestamp();

  const GridPtr grid = build_grid(config.flow.grid);
  const ScalarField initial = make_initial_field(config.shape, grid);
  const RunResult result = run(config.flow, initial);

  fs::create_directories(f.out_dir);
  const fs::path csv = fs::path(f.out_dir) / (f.prefix + ".csv");
  const fs::path man = fs::path(f.out_dir) / (f.prefix + ".manifest.json");
  emit_series(result.series, csv);
  manifest.finished_at = utc_timestamp();
  manifest.stop_reason = to_string(result.reason);
  manifest.steps = result.final_state.step_count;
  manifest.final_t = result.final_state.t;
  manifest.outputs = {csv.string(), man.string()};
  write_manifest(manifest, man);

  const DiagnosticsSample& last = result.series.back();
  row("stop_reason", to_string(result.reason));
  row("t", last.t);
  row("steps", static_cast<double>(result.final_state.step_count));
  row("ratio", last.ratio);
  row("gradmax", last.gradmax);
  row("series", csv.string());
  row("manifest", man.string());
  if (result.violation) {
    const GammaViolation& v = *result.violation;
    throw AdmissibilityError(v.node, v.kappa);
  }
  return 0;
}

struct CounterexampleFlags {
  BlowupConfig config;
  std::string out_dir = ".", prefix = "blowup", exec = "serial";
  bool control = false;
};

void emit_report(const std::string& label, const BlowupReport& r) {
  row(label + ".stop_reason", to_string(r.reason));
  row(label + ".initial_ratio", r.initial_ratio);
  row(label + ".max_ratio", r.max_ratio);
  row(label + ".final_ratio", r.final_ratio);
  row(label + ".final_t", r.final_t);
  row(label + ".final_r_min", r.final_r_min);
  row(label + ".final_r_max", r.final_r_max);
  row(label + ".min_r_max", r.min_r_max);
  row(label + ".tail_increasing", r.tail_increasing ? "true" : "false");
}

json report_json(const BlowupReport& r) {
  return json{{"stop_reason", to_string(r.reason)}, {"initial_ratio", r.initial_ratio},
              {"max_ratio", r.max_ratio},          {"final_ratio", r.final_ratio},
              {"final_t", r.final_t},              {"final_r_min", r.final_r_min},
              {"final_r_max", r.final_r_max},      {"min_r_max", r.min_r_max},
              {"tail_increasing", r.tail_increasing}};
}

int cmd_counterexample(CounterexampleFlags f, const std::string& command_line) {
  f.config.exec = parse_exec(f.exec);
  const std::string started = utc_timestamp();
  const ExperimentResult blowup = run_blowup_experiment(f.config);
  fs::create_directories(f.out_dir);
  const fs::path csv = fs::path(f.out_dir) / (f.prefix + ".csv");
  emit_series(blowup.series, csv);
  emit_report("blowup", blowup.report);

  const BlowupConfig& c = f.config;
  json manifest{{"command", command_line},
                {"version", STARFLOW_VERSION},
                {"started_at", started},
                {"config",
                 {{"alpha", c.alpha}, {"n", c.grid.n}, {"n_polar", c.grid.n_polar}, {"radius", c.radius},
                  {"elongation", c.elongation}, {"offset", c.offset}, {"cfl_safety", c.cfl_safety},
                  {"t_end", c.t_end}, {"control_t_end", c.control_t_end}, {"r_min_floor", c.r_min_floor},
                  {"output_interval", c.output_interval}, {"exec", f.exec}, {"control", f.control}}},
                {"blowup", report_json(blowup.report)}};
  std::vector<std::string> outputs{csv.string()};
  if (f.control) {
    const ExperimentResult control = run_convergence_control(f.config);
    const fs::path ccsv = fs::path(f.out_dir) / (f.prefix + ".control.csv");
    emit_series(control.series, ccsv);
    emit_report("control", control.report);
    manifest["control"] = report_json(control.report);
    outputs.push_back(ccsv.string());
  }
  const fs::path man = fs::path(f.out_dir) / (f.prefix + ".manifest.json");
  outputs.push_back(man.string());
  manifest["finished_at"] = utc_timestamp();
  manifest["outputs"] = outputs;
  std::ofstream out(man);
  if (!out) throw IoError("cannot open '" + man.string() + "' for writing");
  out << manifest.dump(2) << '\n';
  row("manifest", man.string());
  return 0;
}

int cmd_verify_subsolution(double alpha, double theta, int n) {
  const SubsolutionParams params = SubsolutionParams::make(alpha, theta);
  const SubsolutionReport rep = verify_subsolution(params, n);
  row("alpha", params.alpha);
  row("theta", params.theta);
  row("q", params.q);
  row("sigma", params.sigma);
  row("n", n);
  row("samples", static_cast<double>(rep.samples));
  row("c1", rep.c1);
  row("c2", rep.c2);
  row("a_min", rep.a_min);
  row("value_jump", rep.value_jump);
  row("slope_jump", rep.slope_jump);
  row("time_bound_ratio", rep.time_bound_ratio);
  return 0;
}

int cmd_fit_rate(const std::string& input, const std::vector<double>& window, const std::string& column) {
  const DiagnosticsSeries series = parse_series(input);
  std::vector<double> t, y;
  for (const DiagnosticsSample& s : series) {
    t.push_back(s.t);
    if (column == "gradmax") y.push_back(s.gradmax);
    else if (column == "ratio_minus_one") y.push_back(s.ratio - 1.0);
    else throw ConfigError("column: expected gradmax or ratio_minus_one");
  }
  const DecayFit fit = fit_decay_rate(t, y, window.at(0), window.at(1));
  row("gamma_hat", fit.gamma_hat);
  row("c_hat", fit.c_hat);
  row("r2", fit.r2);
  row("samples", static_cast<double>(fit.samples));
  return 0;
}

struct OracleReport {
  double kappa_discrepancy = 0.0;
  double u_discrepancy = 0.0;
  double weingarten = 0.0;
  double gauss = 0.0;
};

OracleReport oracle_compare(const RunConfig& config) {
  const GridPtr grid = build_grid(config.flow.grid);
  const ScalarField rho = make_initial_field(config.shape, grid);
  const CovariantJet jet = covariant_jet(rho);
  const std::vector<oracle::NodeCurvatures> ref = oracle::oracle_curvatures(rho);
  OracleReport rep;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    const PointGeometry pg = point_geometry(rho[k], jet.nodes[k], grid->dim(), 2.0);
    double scale = 0.0;
    for (double v : pg.kappa) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < pg.kappa.size(); ++i) {
      rep.kappa_discrepancy = std::max(rep.kappa_discrepancy, std::abs(pg.kappa[i] - ref[k].kappa[i]) / scale);
    }
    rep.u_discrepancy = std::max(rep.u_discrepancy, std::abs(pg.u - ref[k].u) / pg.u);
  }
  rep.weingarten = oracle::oracle_weingarten_residual(rho);
  rep.gauss = oracle::oracle_gauss_residual(rho);
  return rep;
}

int cmd_oracle_check(const ShapeFlags& flags, const std::string& config_path, bool refine) {
  RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
  flags.apply(config);
  finalize_config(config);
  const OracleReport coarse = oracle_compare(config);
  row("n_polar", config.flow.grid.n_polar);
  row("kappa_rel_discrepancy", coarse.kappa_discrepancy);
  row("u_rel_discrepancy", coarse.u_discrepancy);
  row("weingarten_residual", coarse.weingarten);
  row("gauss_residual", coarse.gauss);
  if (refine) {
    RunConfig fine = config;
    fine.flow.grid.n_polar *= 2;
    if (fine.flow.grid.mode == GridMode::full2d) fine.flow.grid.n_azimuth *= 2;
    const OracleReport r = oracle_compare(fine);
    row("refined.n_polar", fine.flow.grid.n_polar);
    row("refined.kappa_rel_discrepancy", r.kappa_discrepancy);
    row("kappa_order", std::log2(coarse.kappa_discrepancy / r.kappa_discrepancy));
    row("refined.weingarten_residual", r.weingarten);
    row("weingarten_order", std::log2(coarse.weingarten / r.weingarten));
  }
  return 0;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for star-shaped hypersurfaces contracting with speed r^alpha sigma_2^{1/2}"};
  app.set_version_flag("--version", std::string(STARFLOW_VERSION));
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "integrate the flow and write a CSV series and manifest");
  run_flags.shape.attach(*run_cmd);
  run_cmd->add_option("--config", run_flags.config_path, "flat YAML config file");
  run_cmd->add_option("--from-manifest", run_flags.manifest_path, "re-run the configuration of a manifest");
  run_cmd->add_option("--alpha", run_flags.alpha, "speed exponent");
  run_cmd->add_option("--t-end", run_flags.t_end, "final time");
  run_cmd->add_option("--cfl", run_flags.cfl, "parabolic step safety factor");
  run_cmd->add_option("--output-interval", run_flags.output_interval, "diagnostics cadence");
  run_cmd->add_option("--r-min-floor", run_flags.r_min_floor, "stop when min r drops below");
  auto* norm = run_cmd->add_flag("--normalized", run_flags.normalized, "rescaled flow (default)");
  run_cmd->add_flag("--unnormalized", run_flags.unnormalized, "original contracting flow")->excludes(norm);
  run_cmd->add_option("--out", run_flags.out_dir, "output directory");
  run_cmd->add_option("--prefix", run_flags.prefix, "output file prefix");

  CounterexampleFlags cx;
  CLI::App* cx_cmd = app.add_subcommand("counterexample", "ratio blowup from an off-centre ovaloid, alpha < 2");
  cx_cmd->add_option("--alpha", cx.config.alpha, "speed exponent (< 2)")->capture_default_str();
  cx_cmd->add_option("--n-polar", cx.config.grid.n_polar, "polar cells")->capture_default_str();
  cx_cmd->add_option("--n", cx.config.grid.n, "hypersurface dimension")->capture_default_str();
  cx_cmd->add_option("--radius", cx.config.radius, "equatorial semi-axis")->capture_default_str();
  cx_cmd->add_option("--elongation", cx.config.elongation, "polar/equatorial ratio")->capture_default_str();
  cx_cmd->add_option("--offset", cx.config.offset, "centre offset along the axis")->capture_default_str();
  cx_cmd->add_option("--cfl", cx.config.cfl_safety, "parabolic step safety factor")->capture_default_str();
  cx_cmd->add_option("--r-min-floor", cx.config.r_min_floor, "stop radius (0: 1e-3 r_min(0))");
  cx_cmd->add_option("--output-interval", cx.config.output_interval, "diagnostics cadence")->capture_default_str();
  cx_cmd->add_option("--control-t-end", cx.config.control_t_end, "final time of the control run")->capture_default_str();
  cx_cmd->add_flag("--control", cx.control, "also run the alpha = 2 normalised control");
  cx_cmd->add_option("--exec", cx.exec, "serial | parallel")->capture_default_str();
  cx_cmd->add_option("--out", cx.out_dir, "output directory");
  cx_cmd->add_option("--prefix", cx.prefix, "output file prefix")->capture_default_str();

  double sub_alpha = 1.0, sub_theta = 2.0;
  int sub_n = 2;
  CLI::App* sub_cmd = app.add_subcommand("verify-subsolution", "empirical constants of the barrier profile");
  sub_cmd->add_option("--alpha", sub_alpha, "speed exponent (< 2)")->capture_default_str();
  sub_cmd->add_option("--theta", sub_theta, "profile exponent (> 1 / (2 - alpha))")->capture_default_str();
  sub_cmd->add_option("--n", sub_n, "hypersurface dimension")->capture_default_str();

  std::string fit_input, fit_column = "gradmax";
  std::vector<double> fit_window;
  CLI::App* fit_cmd = app.add_subcommand("fit-rate", "log-linear decay fit on a series CSV");
  fit_cmd->add_option("--input", fit_input, "series CSV")->required();
  fit_cmd->add_option("--window", fit_window, "time window: lo hi")->required()->expected(2);
  fit_cmd->add_option("--column", fit_column, "gradmax | ratio_minus_one")->capture_default_str();

  ShapeFlags oracle_flags;
  std::string oracle_config;
  bool oracle_refine = false;
  CLI::App* oracle_cmd = app.add_subcommand("oracle-check", "compare curvatures with the embedding oracle");
  oracle_flags.attach(*oracle_cmd);
  oracle_cmd->add_option("--config", oracle_config, "flat YAML config file");
  oracle_cmd->add_flag("--refine", oracle_refine, "repeat at doubled resolution and report the order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code(ErrorCategory::config);
  }

  const std::string command_line = join_args(argc, argv);
  try {
    if (run_cmd->parsed()) return cmd_run(run_flags, command_line);
    if (cx_cmd->parsed()) return cmd_counterexample(cx, command_line);
    if (sub_cmd->parsed()) return cmd_verify_subsolution(sub_alpha, sub_theta, sub_n);
    if (fit_cmd->parsed()) return cmd_fit_rate(fit_input, fit_window, fit_column);
    if (oracle_cmd->parsed()) return cmd_oracle_check(oracle_flags, oracle_config, oracle_refine);
  } catch (const Error& e) {
    std::cerr << "error[" << to_string(e.category()) << "]: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error[io]: " << e.what() << '\n';
    return exit_code(ErrorCategory::io);
  } catch (const std::exception& e) {
    std::cerr << "error[numerical]: " << e.what() << '\n';
    return exit_code(ErrorCategory::numerical);
  }
  return 0;
}

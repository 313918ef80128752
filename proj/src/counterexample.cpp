#include "starflow/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "starflow/error.hpp"
#include "starflow/geometry.hpp"
#include "starflow/run.hpp"
#include "starflow/shapes.hpp"

namespace starflow {

SubsolutionParams SubsolutionParams::make(double alpha, double theta) {
  if (!std::isfinite(alpha) || !std::isfinite(theta)) {
    throw DomainError("subsolution: alpha and theta must be finite");
  }
  if (!(alpha < 2.0)) throw DomainError("subsolution: needs alpha < 2");
  SubsolutionParams p;
  p.alpha = alpha;
  p.theta = theta;
  p.q = 2.0 - alpha;
  if (!(p.q * theta > 1.0)) throw DomainError("subsolution: needs theta > 1 / (2 - alpha)");
  p.sigma = (p.q * theta - 1.0) / theta;
  return p;
}

const char* to_string(ProfileBranch branch) {
  return branch == ProfileBranch::inner ? "inner" : "outer";
}

namespace {

void check_domain(double rho_graph, double t) {
  if (!(t > -1.0 && t < 0.0)) throw DomainError("profile: t must lie in (-1, 0)");
  if (!(rho_graph >= 0.0 && rho_graph <= 1.0)) throw DomainError("profile: rho_graph must lie in [0, 1]");
}

}  // namespace

double branch_value(const SubsolutionParams& p, ProfileBranch branch, double rho, double t) {
  const double T = std::abs(t);
  if (branch == ProfileBranch::inner) {
    return -std::pow(T, p.theta) + std::pow(T, p.theta * (p.sigma - 1.0)) * rho * rho;
  }
  return -std::pow(T, p.theta) - (1.0 - p.sigma) / (1.0 + p.sigma) * std::pow(T, p.theta * (1.0 + p.sigma)) +
         2.0 / (1.0 + p.sigma) * std::pow(rho, 1.0 + p.sigma);
}

double branch_slope(const SubsolutionParams& p, ProfileBranch branch, double rho, double t) {
  if (branch == ProfileBranch::inner) return 2.0 * std::pow(std::abs(t), p.theta * (p.sigma - 1.0)) * rho;
  return 2.0 * std::pow(rho, p.sigma);
}

double branch_time_derivative(const SubsolutionParams& p, ProfileBranch branch, double rho, double t) {
  // d|t|/dt = -1 for t < 0.
  const double T = std::abs(t);
  const double lead = p.theta * std::pow(T, p.theta - 1.0);
  if (branch == ProfileBranch::inner) {
    return lead + p.theta * (1.0 - p.sigma) * std::pow(T, p.theta * p.sigma - p.theta - 1.0) * rho * rho;
  }
  return lead * (1.0 + (1.0 - p.sigma) * std::pow(T, p.theta * p.sigma));
}

ProfileSample profile(const SubsolutionParams& p, double rho, double t, int n) {
  check_domain(rho, t);
  if (n < 2) throw DomainError("profile: n must be at least 2");
  ProfileSample s;
  s.rho_graph = rho;
  s.t = t;
  s.branch = rho < std::pow(std::abs(t), p.theta) ? ProfileBranch::inner : ProfileBranch::outer;
  s.value = branch_value(p, s.branch, rho, t);
  s.slope = branch_slope(p, s.branch, rho, t);
  s.time_derivative = branch_time_derivative(p, s.branch, rho, t);

  double parallel = 0.0, meridian = 0.0;
  if (s.branch == ProfileBranch::inner) {
    const double K = std::pow(std::abs(t), p.theta * (p.sigma - 1.0));
    const double root = std::sqrt(1.0 + 4.0 * K * K * rho * rho);
    parallel = 2.0 * K / root;
    meridian = 2.0 * K / (root * root * root);
  } else {
    const double root = std::sqrt(1.0 + 4.0 * std::pow(rho, 2.0 * p.sigma));
    parallel = 2.0 * std::pow(rho, p.sigma - 1.0) / root;
    meridian = 2.0 * p.sigma * std::pow(rho, p.sigma - 1.0) / (root * root * root);
  }
  s.kappas.assign(static_cast<std::size_t>(n - 1), parallel);
  s.kappas.push_back(meridian);
  return s;
}

SubsolutionReport verify_subsolution(const SubsolutionParams& p, std::span<const double> times,
                                     std::span<const double> radii, int n) {
  SubsolutionReport rep;
  rep.params = p;
  rep.n = n;
  rep.c1 = std::numeric_limits<double>::infinity();
  for (double t : times) {
    const double scale = std::pow(std::abs(t), p.theta - 1.0);
    for (double rho : radii) {
      const ProfileSample s = profile(p, rho, t, n);
      const double r = std::hypot(rho, s.value);
      const double speed = std::pow(r, p.alpha) * std::sqrt(sigma_k(s.kappas, 2));
      rep.c1 = std::min(rep.c1, speed / scale);
      rep.c2 = std::max(rep.c2, std::abs(s.time_derivative) / scale);
      rep.time_bound_ratio = std::max(rep.time_bound_ratio, std::abs(s.time_derivative) / (2.0 * p.theta * scale));
      ++rep.samples;
    }
    const double junction = std::pow(std::abs(t), p.theta);
    if (junction <= 1.0) {
      rep.value_jump = std::max(rep.value_jump, std::abs(branch_value(p, ProfileBranch::inner, junction, t) -
                                                         branch_value(p, ProfileBranch::outer, junction, t)));
      rep.slope_jump = std::max(rep.slope_jump, std::abs(branch_slope(p, ProfileBranch::inner, junction, t) -
                                                         branch_slope(p, ProfileBranch::outer, junction, t)));
    }
  }
  if (rep.samples == 0) rep.c1 = 0.0;
  rep.a_min = rep.c1 > 0.0 ? rep.c2 / rep.c1 : std::numeric_limits<double>::infinity();
  return rep;
}

SubsolutionReport verify_subsolution(const SubsolutionParams& p, int n) {
  std::vector<double> times, radii;
  for (int k = 9; k >= 1; --k) times.push_back(-0.1 * k);
  for (int k = 0; k <= 10; ++k) radii.push_back(0.1 * k);
  return verify_subsolution(p, times, radii, n);
}

BlowupReport summarize_ratio(const DiagnosticsSeries& series, StopReason reason) {
  if (series.empty()) throw DomainError("summarize_ratio: empty series");
  BlowupReport rep;
  rep.initial_ratio = series.front().ratio;
  rep.final_ratio = series.back().ratio;
  rep.final_t = series.back().t;
  rep.final_r_min = series.back().r_min;
  rep.final_r_max = series.back().r_max;
  rep.reason = reason;
  rep.min_r_max = series.front().r_max;
  for (const DiagnosticsSample& s : series) {
    rep.max_ratio = std::max(rep.max_ratio, s.ratio);
    rep.min_r_max = std::min(rep.min_r_max, s.r_max);
  }
  rep.tail_increasing = true;
  for (std::size_t k = series.size() / 2 + 1; k < series.size(); ++k) {
    if (series[k].ratio < series[k - 1].ratio) rep.tail_increasing = false;
  }
  return rep;
}

namespace {

ScalarField ovaloid_field(const BlowupConfig& config) {
  InitialShapeSpec shape;
  shape.kind = ShapeKind::offcenter_ovaloid;
  shape.radius = config.radius;
  shape.elongation = config.elongation;
  shape.offset = config.offset;
  return make_initial_field(shape, build_grid(config.grid));
}

ExperimentResult execute(const FlowConfig& flow, const ScalarField& initial) {
  RunResult result = run(flow, initial);
  ExperimentResult out;
  out.report = summarize_ratio(result.series, result.reason);
  out.series = std::move(result.series);
  return out;
}

}  // namespace

ExperimentResult run_blowup_experiment(const BlowupConfig& config) {
  if (!(config.alpha < 2.0)) throw DomainError("blowup experiment: needs alpha < 2");
  FlowConfig flow;
  flow.alpha = config.alpha;
  flow.normalized = false;
  flow.grid = config.grid;
  flow.t_end = config.t_end;
  flow.cfl_safety = config.cfl_safety;
  flow.r_min_floor = config.r_min_floor;
  flow.output_interval = config.output_interval;
  flow.exec = config.exec;
  return execute(flow, ovaloid_field(config));
}

ExperimentResult run_convergence_control(const BlowupConfig& config) {
  FlowConfig flow;
  flow.alpha = 2.0;
  flow.normalized = true;
  flow.grid = config.grid;
  flow.t_end = config.control_t_end;
  flow.cfl_safety = config.cfl_safety;
  flow.output_interval = std::max(config.output_interval, 0.05);
  flow.exec = config.exec;
  return execute(flow, ovaloid_field(config));
}

}  // namespace starflow

#include "starflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "starflow/error.hpp"
#include "starflow/kernels.hpp"

namespace starflow {

namespace {
constexpr double kMinStep = 1e-12;
}

void FlowConfig::validate() const {
  if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw ConfigError("cfl_safety must lie in (0, 1]");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be positive");
  if (max_steps <= 0) throw ConfigError("max_steps must be positive");
  if (r_min_floor < 0.0) throw ConfigError("r_min_floor must be positive (0 selects the default)");
  if (output_interval < 0.0) throw ConfigError("output_interval must be nonnegative");
  for (double s : sample_times)
    if (!(s >= 0.0) || !std::isfinite(s)) throw ConfigError("sample_times must be nonnegative");
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::reached_t_end: return "reached_t_end";
    case StopReason::reached_origin: return "reached_origin";
    case StopReason::left_gamma2: return "left_gamma2";
    case StopReason::step_limit: return "step_limit";
  }
  return "unknown";
}

namespace {
ScalarField rhs_field(const ScalarField& rho, double alpha, bool normalized, Exec exec) {
  std::vector<double> out(rho.size());
  std::vector<JetSample> scratch;
  flow_rhs(rho.grid(), rho.values(), alpha, normalized, out, scratch, exec);
  return ScalarField(rho.grid_ptr(), std::move(out));
}
}  // namespace

ScalarField rhs_normalized(const ScalarField& rho, double alpha, Exec exec) {
  return rhs_field(rho, alpha, true, exec);
}

ScalarField rhs_unnormalized(const ScalarField& rho, double alpha, Exec exec) {
  return rhs_field(rho, alpha, false, exec);
}

FlowIntegrator::FlowIntegrator(const FlowConfig& config) : config_(config) {}

double FlowIntegrator::evaluate(std::span<const double> rho, std::span<double> out) {
  // Grid is fixed for the life of the state; the caller checks sizes.
  return flow_rhs(*grid_, rho, config_.alpha, config_.normalized, out, scratch_, config_.exec);
}

double FlowIntegrator::advance(FlowState& state, double t_limit) {
  grid_ = state.rho.grid_ptr().get();
  const std::size_t count = state.rho.size();
  k1_.resize(count);
  k2_.resize(count);
  k3_.resize(count);
  k4_.resize(count);
  stage_.resize(count);
  std::span<double> rho = state.rho.values();

  const double d_max = evaluate(rho, k1_);
  const double spacing = grid_->min_spacing();
  const double dt_stable = d_max > 0.0 ? config_.cfl_safety * spacing * spacing / d_max : t_limit - state.t;
  if (!(dt_stable >= kMinStep)) {
    throw NumericalError("time step underflow: dt = " + std::to_string(dt_stable) + " at t = " +
                         std::to_string(state.t));
  }
  const double remaining = t_limit - state.t;
  const double dt = std::min(dt_stable, remaining);

  for (std::size_t i = 0; i < count; ++i) stage_[i] = rho[i] + 0.5 * dt * k1_[i];
  evaluate(stage_, k2_);
  for (std::size_t i = 0; i < count; ++i) stage_[i] = rho[i] + 0.5 * dt * k2_[i];
  evaluate(stage_, k3_);
  for (std::size_t i = 0; i < count; ++i) stage_[i] = rho[i] + dt * k3_[i];
  evaluate(stage_, k4_);
  for (std::size_t i = 0; i < count; ++i)
    rho[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);

  // Land exactly on the limit when the step was clipped to it.
  state.t = dt == remaining ? t_limit : state.t + dt;
  state.step_count += 1;
  state.last_dt = dt;
  state.stable_dt = dt_stable;
  return dt;
}

FlowState step(const FlowState& state, const FlowConfig& config) {
  FlowState next = state;
  FlowIntegrator integrator(config);
  integrator.advance(next, std::max(config.t_end, state.t));
  return next;
}

double phi_factor(double t, double alpha, double phi0) {
  if (!(phi0 > 0.0)) throw DomainError("phi_factor: phi0 must be positive");
  if (alpha == 2.0) return phi0 * std::exp(-t);
  const double q = 2.0 - alpha;
  const double base = std::pow(phi0, q) - q * t;
  if (!(base > 0.0)) {
    throw DomainError("phi_factor: phi0^(2-alpha) - (2-alpha) t = " + std::to_string(base) +
                      " is not positive at t = " + std::to_string(t));
  }
  return std::pow(base, 1.0 / q);
}

double tau_of_phi(double phi) {
  if (!(phi > 0.0)) throw DomainError("tau_of_phi: phi must be positive");
  return -std::log(phi);
}

std::vector<Snapshot> normalize_trajectory(const std::vector<Snapshot>& unnormalized, double alpha,
                                           double phi0) {
  std::vector<Snapshot> out;
  out.reserve(unnormalized.size());
  double last_t = -std::numeric_limits<double>::infinity();
  for (const Snapshot& snap : unnormalized) {
    if (!(snap.t > last_t)) throw DomainError("normalize_trajectory: times must increase");
    last_t = snap.t;
    const double phi = phi_factor(snap.t, alpha, phi0);
    const double shift = std::log(phi);
    std::vector<double> values(snap.rho.values().begin(), snap.rho.values().end());
    for (double& v : values) v -= shift;
    out.push_back({tau_of_phi(phi), ScalarField(snap.rho.grid_ptr(), std::move(values))});
  }
  return out;
}

}  // namespace starflow

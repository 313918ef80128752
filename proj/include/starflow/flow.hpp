#pragma once

#include <span>
#include <string>
#include <vector>

#include "starflow/exec.hpp"
#include "starflow/sphere_grid.hpp"

namespace starflow {

struct FlowConfig {
  double alpha = 2.0;
  bool normalized = true;
  GridSpec grid;
  double t_end = 10.0;
  double cfl_safety = 0.2;
  long max_steps = 100'000'000;
  /// Stop with reached_origin once min r drops below this; <= 0 selects 1e-3 * r_min(0).
  double r_min_floor = 0.0;
  /// Diagnostics cadence in flow time; <= 0 samples only at the start and end.
  double output_interval = 0.1;
  /// Extra times at which the run lands exactly and records a sample.
  std::vector<double> sample_times;
  bool keep_snapshots = false;
  Exec exec = Exec::serial;

  void validate() const;
};

struct FlowState {
  double t = 0.0;
  ScalarField rho;
  long step_count = 0;
  double last_dt = 0.0;    // step actually taken, possibly clipped to land on a time
  double stable_dt = 0.0;  // parabolic step limit at the start of the last step
};

enum class StopReason { reached_t_end, reached_origin, left_gamma2, step_limit };

const char* to_string(StopReason reason);

/// d rho / dt of the rescaled flow: -exp(rho (alpha - 2)) sigma_2^{1/2}(atilde) + 1.
ScalarField rhs_normalized(const ScalarField& rho, double alpha, Exec exec = Exec::serial);

/// d rho / dt of the original contracting flow: -exp(rho (alpha - 2)) sigma_2^{1/2}(atilde).
ScalarField rhs_unnormalized(const ScalarField& rho, double alpha, Exec exec = Exec::serial);

/// Classical four-stage Runge-Kutta in the log-radial gauge with the parabolic
/// step dt = cfl_safety * spacing^2 / D_max. Buffers persist across steps.
class FlowIntegrator {
 public:
  explicit FlowIntegrator(const FlowConfig& config);

  /// Advances `state` by one step, never past `t_limit`. Returns the step taken.
  double advance(FlowState& state, double t_limit);

 private:
  double evaluate(std::span<const double> rho, std::span<double> out);

  const FlowConfig& config_;
  const SphereGrid* grid_ = nullptr;
  std::vector<double> k1_, k2_, k3_, k4_, stage_;
  std::vector<JetSample> scratch_;
};

/// One step, clipped at config.t_end.
FlowState step(const FlowState& state, const FlowConfig& config);

/// Rescaling factor of round spheres: phi(t) = phi0 e^{-t} for alpha = 2 and
/// (phi0^{2-alpha} - (2-alpha) t)^{1/(2-alpha)} otherwise.
double phi_factor(double t, double alpha, double phi0 = 1.0);

/// Normalised time tau = -ln phi.
double tau_of_phi(double phi);

struct Snapshot {
  double t = 0.0;
  ScalarField rho;
};

/// rho~(tau) = rho(t) - ln phi(t) at tau = -ln phi(t), for each snapshot of an
/// unnormalised run.
std::vector<Snapshot> normalize_trajectory(const std::vector<Snapshot>& unnormalized, double alpha,
                                           double phi0 = 1.0);

}  // namespace starflow

#pragma once

#include <span>
#include <string>
#include <vector>

#include "starflow/diagnostics.hpp"
#include "starflow/flow.hpp"

namespace starflow {

/// Parameters of the rotationally symmetric barrier for alpha < 2:
/// q = 2 - alpha, sigma = (q theta - 1) / theta, requiring q > 0 and q theta > 1.
struct SubsolutionParams {
  double alpha = 1.0;
  double theta = 2.0;
  double q = 1.0;
  double sigma = 0.5;

  /// Validates and derives q and sigma. Throws DomainError.
  static SubsolutionParams make(double alpha, double theta);
};

enum class ProfileBranch { inner, outer };

const char* to_string(ProfileBranch branch);

/// The barrier profile at graph radius rho_graph (a radial coordinate in R^n,
/// unrelated to the log-radius) and time t in (-1, 0).
struct ProfileSample {
  double rho_graph = 0.0;
  double t = 0.0;
  double value = 0.0;           // phi(rho_graph, t)
  double slope = 0.0;           // d phi / d rho_graph
  double time_derivative = 0.0; // d phi / dt
  ProfileBranch branch = ProfileBranch::inner;
  std::vector<double> kappas;   // n - 1 parallel curvatures, then the meridian one
};

/// Branch is inner iff rho_graph < |t|^theta. Throws DomainError outside
/// t in (-1, 0), rho_graph in [0, 1], or n < 2.
ProfileSample profile(const SubsolutionParams& params, double rho_graph, double t, int n = 2);

/// Value, radial slope and time derivative of one named branch, without the
/// branch selection; used for continuity checks at the junction.
double branch_value(const SubsolutionParams& params, ProfileBranch branch, double rho_graph, double t);
double branch_slope(const SubsolutionParams& params, ProfileBranch branch, double rho_graph, double t);
double branch_time_derivative(const SubsolutionParams& params, ProfileBranch branch, double rho_graph,
                              double t);

struct SubsolutionReport {
  SubsolutionParams params;
  int n = 2;
  std::size_t samples = 0;
  /// min over samples of r^alpha sigma_2^{1/2} / |t|^{theta - 1}
  double c1 = 0.0;
  /// max over samples of |d phi / dt| / |t|^{theta - 1}
  double c2 = 0.0;
  /// smallest multiplier a with a c1 >= c2
  double a_min = 0.0;
  /// worst value and slope mismatch between the two branches at rho = |t|^theta
  double value_jump = 0.0;
  double slope_jump = 0.0;
  /// max |d phi / dt| / (2 theta |t|^{theta - 1}); at most 1 when the time bound holds
  double time_bound_ratio = 0.0;
};

/// Ambient placement: the profile's axis passes through the origin and the tip
/// sits at height -|t|^theta, so a graph point lies at distance
/// sqrt(rho_graph^2 + phi^2) from the origin.
SubsolutionReport verify_subsolution(const SubsolutionParams& params, std::span<const double> times,
                                     std::span<const double> radii, int n = 2);

/// Default sample set: t in {-0.9, ..., -0.1}, rho_graph in {0, 0.1, ..., 1}.
SubsolutionReport verify_subsolution(const SubsolutionParams& params, int n = 2);

/// Initial data and run controls for the ratio-blowup experiment.
struct BlowupConfig {
  double alpha = 1.0;
  GridSpec grid{GridMode::axisymmetric, 2, 128, 0};
  /// Off-centre body: ellipsoid of revolution with equatorial semi-axis
  /// `radius`, polar semi-axis radius * elongation, centre shifted by `offset`
  /// along the axis away from the north pole.
  double radius = 1.0;
  double elongation = 1.0;
  double offset = 2.0 / 3.0;
  double cfl_safety = 0.2;
  double t_end = 10.0;          // unnormalised run; normally ends at the floor first
  double control_t_end = 10.0;  // alpha = 2 normalised control run
  double r_min_floor = 0.0;     // <= 0: 1e-3 * r_min(0)
  double output_interval = 0.01;
  Exec exec = Exec::serial;
};

struct BlowupReport {
  double initial_ratio = 0.0;
  double max_ratio = 0.0;
  double final_ratio = 0.0;
  double final_t = 0.0;
  double final_r_min = 0.0;
  double final_r_max = 0.0;
  double min_r_max = 0.0;       // smallest r_max along the run
  StopReason reason = StopReason::reached_t_end;
  /// Whether the ratio is nondecreasing over the last half of the samples.
  bool tail_increasing = false;
};

struct ExperimentResult {
  DiagnosticsSeries series;
  BlowupReport report;
};

/// Unnormalised flow with alpha < 2 from the off-centre body until the surface
/// reaches the floor around the origin. Throws DomainError for alpha >= 2.
ExperimentResult run_blowup_experiment(const BlowupConfig& config);

/// Same initial data under the normalised alpha = 2 flow up to config.t_end.
ExperimentResult run_convergence_control(const BlowupConfig& config);

BlowupReport summarize_ratio(const DiagnosticsSeries& series, StopReason reason);

}  // namespace starflow

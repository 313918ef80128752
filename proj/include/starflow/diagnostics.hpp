#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "starflow/flow.hpp"

namespace starflow {

struct DiagnosticsSample {
  double t = 0.0;
  double r_min = 0.0, r_max = 0.0, ratio = 1.0;
  double u_min = 0.0, u_max = 0.0;
  double F_min = 0.0, F_max = 0.0;
  double H_max = 0.0;
  double A2_max = 0.0;
  double gradmax = 0.0;
  double dt = 0.0;  // parabolic step limit of the last step; 0 before the first
};

using DiagnosticsSeries = std::vector<DiagnosticsSample>;

/// Exact grid extrema of r, u, F, H, |A|^2 and |grad rho| for one state.
DiagnosticsSample sample(const FlowState& state, double alpha, Exec exec = Exec::serial);

struct DecayFit {
  double gamma_hat = 0.0;
  double c_hat = 0.0;
  double r2 = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
  std::size_t samples = 0;
};

/// Least-squares line through (t, log y) on t_lo <= t <= t_hi; gamma_hat = -slope.
/// Needs at least 10 samples in the window, all positive.
DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> y, double t_lo, double t_hi);
DecayFit fit_decay_rate(const DiagnosticsSeries& series, double t_lo, double t_hi);

/// Time window spanning the samples whose gradmax lies in [lo, hi], from the
/// first such sample to the last.
std::optional<std::pair<double, double>> gradmax_window(const DiagnosticsSeries& series, double lo,
                                                        double hi);

/// Max-norm residual of d/dt g_ij = -2 Phi h_ij + 2 g_ij (normalised flow;
/// without the 2 g_ij term for the unnormalised one) between two states one
/// step apart.
///
/// The grid points move radially while the identity holds at material points,
/// so the radial-gauge derivative is corrected by the Lie derivative of g along
/// the tangential velocity W = Phi grad(rho) / w. Everything except the time
/// difference is evaluated at the midpoint state.
double check_metric_evolution(const FlowState& before, const FlowState& after, double alpha,
                              bool normalized = true);

}  // namespace starflow

#pragma once

#include <optional>
#include <vector>

#include "starflow/diagnostics.hpp"
#include "starflow/flow.hpp"

namespace starflow {

struct GammaViolation {
  double t = 0.0;
  std::size_t node = 0;
  std::vector<double> kappa;
};

struct RunResult {
  DiagnosticsSeries series;
  StopReason reason = StopReason::reached_t_end;
  FlowState final_state;
  std::vector<Snapshot> snapshots;  // filled when config.keep_snapshots
  std::optional<GammaViolation> violation;
  double r_min_floor = 0.0;
};

/// Integrates from `initial` until t_end or an event. Initial data outside
/// Gamma_2 throws AdmissibilityError before any step; a later violation ends the
/// run with StopReason::left_gamma2.
RunResult run(const FlowConfig& config, const ScalarField& initial);

}  // namespace starflow

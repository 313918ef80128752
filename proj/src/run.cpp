#include "starflow/run.hpp"

#include <algorithm>
#include <cmath>

#include "starflow/error.hpp"
#include "starflow/kernels.hpp"

namespace starflow {

RunResult run(const FlowConfig& config, const ScalarField& initial) {
  config.validate();
  if (!initial.all_finite()) throw DomainError("initial data contains non-finite values");
  {
    std::vector<double> probe(initial.size());
    std::vector<JetSample> scratch;
    flow_rhs(initial.grid(), initial.values(), config.alpha, config.normalized, probe, scratch,
             config.exec);
  }

  FlowState state{0.0, initial, 0, 0.0, 0.0};
  RunResult result{{}, StopReason::reached_t_end, state, {}, std::nullopt, 0.0};
  const auto min_rho = [&state] {
    const auto v = state.rho.values();
    return *std::min_element(v.begin(), v.end());
  };
  result.r_min_floor = config.r_min_floor > 0.0 ? config.r_min_floor : 1e-3 * std::exp(min_rho());

  std::vector<double> extra;
  for (double s : config.sample_times)
    if (s > 0.0 && s <= config.t_end) extra.push_back(s);
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());

  const auto record = [&] {
    DiagnosticsSample s = sample(state, config.alpha, config.exec);
    result.series.push_back(s);
    if (config.keep_snapshots) result.snapshots.push_back({state.t, state.rho});
  };
  record();

  long cadence = 1;
  std::size_t next_extra = 0;
  const auto next_target = [&] {
    double target = config.t_end;
    if (config.output_interval > 0.0) target = std::min(target, cadence * config.output_interval);
    if (next_extra < extra.size()) target = std::min(target, extra[next_extra]);
    return target;
  };

  FlowIntegrator integrator(config);
  for (;;) {
    if (state.t >= config.t_end) {
      result.reason = StopReason::reached_t_end;
      break;
    }
    if (state.step_count >= config.max_steps) {
      result.reason = StopReason::step_limit;
      break;
    }
    const double target = next_target();
    try {
      integrator.advance(state, target);
    } catch (const AdmissibilityError& e) {
      result.reason = StopReason::left_gamma2;
      result.violation = GammaViolation{state.t, e.node(), e.kappa()};
      break;
    }
    const bool landed = state.t == target;
    if (landed) {
      while (config.output_interval > 0.0 && cadence * config.output_interval <= state.t) ++cadence;
      while (next_extra < extra.size() && extra[next_extra] <= state.t) ++next_extra;
      record();
    }
    if (std::exp(min_rho()) < result.r_min_floor) {
      if (!landed) record();
      result.reason = StopReason::reached_origin;
      break;
    }
  }
  if (result.series.back().t != state.t) record();
  result.final_state = std::move(state);
  return result;
}

}  // namespace starflow

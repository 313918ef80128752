// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "starflow/counterexample.hpp"
#include "starflow/geometry.hpp"
#include "starflow/oracle.hpp"
#include "starflow/run.hpp"
#include "starflow/shapes.hpp"

using namespace starflow;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double order_of(double coarse, double fine) { return std::log2(coarse / fine); }

ScalarField legendre_field(const GridPtr& g, double a1, double a2) {
  std::vector<double> v(g->size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double x = std::cos(g->theta(g->row_of(k)));
    v[k] = a1 * x + a2 * std::legendre(2, x);
  }
  return ScalarField(g, std::move(v));
}

FlowConfig decay_config() {
  FlowConfig c;
  c.alpha = 2.0;
  c.grid = GridSpec{GridMode::axisymmetric, 2, 128, 0};
  c.t_end = 15.0;
  c.output_interval = 0.05;
  return c;
}

// The decay run is shared by criteria 3 and 4.
const RunResult& decay_run() {
  static const RunResult result = [] {
    const FlowConfig c = decay_config();
    return run(c, legendre_field(build_grid(c.grid), 0.2, 0.0));
  }();
  return result;
}

Outcome sphere_fixed_point() {
  double worst = 0.0;
  for (double alpha : {2.0, 3.0, 4.0}) {
    FlowConfig c;
    c.alpha = alpha;
    c.grid.n_polar = 128;
    FlowState s{0.0, ScalarField(build_grid(c.grid), 0.0), 0, 0.0, 0.0};
    FlowIntegrator integrator(c);
    for (int k = 0; k < 1000; ++k) integrator.advance(s, 1e9);
    for (double v : s.rho.values()) worst = std::max(worst, std::abs(v));
  }
  return {worst < 1e-12, fmt("max|rho| after 1000 steps = %.3e (alpha 2, 3, 4)", worst)};
}

Outcome scalar_ode() {
  FlowConfig c;
  c.alpha = 3.0;
  c.t_end = 5.0;
  c.output_interval = 0.1;
  const RunResult r = run(c, ScalarField(build_grid(c.grid), std::log(2.0)));
  // r' = r - r^2 with r(0) = 2.
  double worst = 0.0;
  for (const auto& s : r.series) {
    const double exact = 1.0 / (1.0 - 0.5 * std::exp(-s.t));
    worst = std::max({worst, std::abs(s.r_min - exact) / exact, std::abs(s.r_max - exact) / exact});
  }
  const bool reached = r.reason == StopReason::reached_t_end && r.series.back().t == 5.0;
  return {reached && worst < 1e-8, fmt("worst relative error %.3e over %zu samples", worst, r.series.size())};
}

Outcome exponential_decay() {
  const RunResult& r = decay_run();
  const auto window = gradmax_window(r.series, 1e-8, 1e-2);
  if (!window) return {false, "gradmax never entered [1e-8, 1e-2]"};
  const DecayFit fit = fit_decay_rate(r.series, window->first, window->second);
  const double final_excess = r.series.back().ratio - 1.0;
  const bool pass = r.reason == StopReason::reached_t_end && fit.gamma_hat > 0.0 && fit.r2 > 0.99 &&
                    final_excess < 1e-6;
  return {pass, fmt("gamma_hat %.5f r2 %.8f on t in [%.2f, %.2f], final ratio - 1 = %.3e", fit.gamma_hat,
                    fit.r2, fit.t_lo, fit.t_hi, final_excess)};
}

Outcome bound_persistence() {
  const RunResult& r = decay_run();
  const auto& s = r.series;
  const double h = std::acos(-1.0) / 128.0;
  const double lo = std::min(1.0, s.front().r_min) - 10.0 * h * h;
  const double hi = std::max(1.0, s.front().r_max) + 10.0 * h * h;
  double r_min = s.front().r_min, r_max = s.front().r_max, u_min = s.front().u_min, F_min = s.front().F_min;
  for (const auto& x : s) {
    r_min = std::min(r_min, x.r_min);
    r_max = std::max(r_max, x.r_max);
    u_min = std::min(u_min, x.u_min);
    F_min = std::min(F_min, x.F_min);
  }
  const double t_mid = 0.5 * s.back().t;
  double F_first = 0.0, F_second = 0.0, A_first = 0.0, A_second = 0.0;
  for (const auto& x : s) {
    (x.t <= t_mid ? F_first : F_second) = std::max(x.t <= t_mid ? F_first : F_second, x.F_max);
    (x.t <= t_mid ? A_first : A_second) = std::max(x.t <= t_mid ? A_first : A_second, x.A2_max);
  }
  const bool pass = r_min >= lo && r_max <= hi && u_min > 0.0 && F_min > 0.0 && F_second <= 1.1 * F_first &&
                    A_second <= 1.1 * A_first;
  return {pass, fmt("r in [%.6f, %.6f] within [%.6f, %.6f]; u_min %.4f F_min %.4f; "
                    "F_max %.4f/%.4f A2_max %.4f/%.4f (second/first half)",
                    r_min, r_max, lo, hi, u_min, F_min, F_second, F_first, A_second, A_first)};
}

double node_relative_discrepancy(const InitialShapeSpec& spec, const GridSpec& gs) {
  const GridPtr g = build_grid(gs);
  const ScalarField rho = make_initial_field(spec, g);
  const CovariantJet jet = covariant_jet(rho);
  const auto reference = oracle::oracle_curvatures(rho);
  double worst = 0.0;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    const PointGeometry pg = point_geometry(rho[k], jet.nodes[k], gs.n, 2.0);
    double scale = 0.0;
    for (double v : pg.kappa) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < pg.kappa.size(); ++i)
      worst = std::max(worst, std::abs(pg.kappa[i] - reference[k].kappa[i]) / scale);
  }
  return worst;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  double worst_fine = 0.0, worst_order = 1e9;
  int scaled = 0;
  for (int f = 0; f < 20; ++f) {
    const bool full = f >= 15;
    const int n = full ? 2 : 2 + f % 3;
    InitialShapeSpec spec;
    spec.kind = ShapeKind::custom_harmonics;
    double total = 0.0;
    for (int t = 0; t < 3; ++t) {
      const int l = 1 + static_cast<int>(rng() % 3);
      const int m = full ? static_cast<int>(rng() % (2 * l + 1)) - l : 0;
      const double c = coeff(rng);
      spec.harmonics.push_back({l, m, c});
      total += std::abs(c);
    }
    for (auto& h : spec.harmonics) h.coeff *= 0.2 / total;
    const GridMode mode = full ? GridMode::full2d : GridMode::axisymmetric;
    const GridSpec coarse{mode, n, 128, full ? 256 : 0};
    const GridSpec fine{mode, n, 256, full ? 512 : 0};
    const double s = max_admissible_scale(spec, build_grid(coarse));
    if (s < 1.0) {
      ++scaled;
      for (auto& h : spec.harmonics) h.coeff *= 0.9 * s;
    }
    const double d1 = node_relative_discrepancy(spec, coarse);
    const double d2 = node_relative_discrepancy(spec, fine);
    worst_fine = std::max(worst_fine, d2);
    worst_order = std::min(worst_order, order_of(d1, d2));
  }
  return {worst_fine < 1e-4 && worst_order >= 1.8,
          fmt("20 fields (%d rescaled into the cone): max discrepancy %.3e at N = 256, min order %.2f",
              scaled, worst_fine, worst_order)};
}

Outcome metric_evolution() {
  std::vector<double> residuals;
  for (int N : {64, 128, 256}) {
    FlowConfig c = decay_config();
    c.grid.n_polar = N;
    c.t_end = 0.5;
    c.output_interval = 0.0;
    const RunResult r = run(c, legendre_field(build_grid(c.grid), 0.2, 0.0));
    FlowState after = r.final_state;
    const FlowState before = after;
    c.t_end = 100.0;
    FlowIntegrator integrator(c);
    integrator.advance(after, after.t + 4e-5 * 128.0 / N);
    residuals.push_back(check_metric_evolution(before, after, c.alpha, true));
  }
  const double o1 = order_of(residuals[0], residuals[1]);
  const double o2 = order_of(residuals[1], residuals[2]);
  return {std::min(o1, o2) >= 1.8,
          fmt("residuals %.3e %.3e %.3e at N = 64, 128, 256 with dt halved alongside; orders %.2f %.2f",
              residuals[0], residuals[1], residuals[2], o1, o2)};
}

Outcome subsolution() {
  const SubsolutionParams p = SubsolutionParams::make(1.0, 2.0);
  const SubsolutionReport rep = verify_subsolution(p, 2);
  double worst_order = 1e9, worst_fine = 0.0;
  for (double t : {-0.9, -0.5, -0.25, -0.1}) {
    const double junction = std::pow(std::abs(t), p.theta);
    std::vector<double> errors;
    for (double h : {1e-3, 5e-4, 2.5e-4}) {
      std::vector<double> radii;
      for (double r : {0.3 * junction, 0.6 * junction, 1.5 * junction, 3.0 * junction, 0.5, 0.9})
        if (r <= 1.0 && std::abs(r - junction) > 3e-3 && r > 2e-3) radii.push_back(r);
      const auto shape = [&](double s) {
        return branch_value(p, s < junction ? ProfileBranch::inner : ProfileBranch::outer, s, t);
      };
      const auto reference = oracle::graph_curvatures(shape, radii, h, 2);
      double e = 0.0;
      for (std::size_t i = 0; i < radii.size(); ++i) {
        const ProfileSample ps = profile(p, radii[i], t, 2);
        for (int q = 0; q < 2; ++q)
          e = std::max(e, std::abs(ps.kappas[q] - reference[i][q]) / std::abs(ps.kappas[q]));
      }
      errors.push_back(e);
    }
    worst_fine = std::max(worst_fine, errors.back());
    worst_order = std::min({worst_order, order_of(errors[0], errors[1]), order_of(errors[1], errors[2])});
  }
  const bool pass = rep.value_jump <= 1e-12 && rep.slope_jump <= 1e-12 && rep.c1 > 0.0 &&
                    std::isfinite(rep.c2 / rep.c1) && worst_order >= 1.8;
  return {pass, fmt("jumps %.2e/%.2e; oracle rel err %.2e at h = 2.5e-4, min order %.2f; c1 %.4f c2 %.4f a_min %.4f",
                    rep.value_jump, rep.slope_jump, worst_fine, worst_order, rep.c1, rep.c2, rep.a_min)};
}

Outcome blowup_contrast() {
  const BlowupConfig c;
  const ExperimentResult blowup = run_blowup_experiment(c);
  const ExperimentResult control = run_convergence_control(c);
  const BlowupReport& b = blowup.report;
  const bool pass = b.reason == StopReason::reached_origin && b.max_ratio > 10.0 * b.initial_ratio &&
                    control.report.reason == StopReason::reached_t_end && control.report.final_ratio < 1.05;
  return {pass, fmt("alpha 1: ratio %.4f -> %.4f (%s at t = %.4f); alpha 2 normalised: final ratio %.7f",
                    b.initial_ratio, b.max_ratio, to_string(b.reason), b.final_t, control.report.final_ratio)};
}

Outcome normalization_equivalence() {
  const std::vector<double> taus{0.25, 0.5, 1.0, 2.0};
  double worst = 0.0;
  std::size_t matched = 0;
  for (double alpha : {2.0, 3.0}) {
    FlowConfig normal;
    normal.alpha = alpha;
    normal.t_end = taus.back();
    normal.sample_times = taus;
    normal.output_interval = 0.0;
    normal.keep_snapshots = true;
    const GridPtr g = build_grid(normal.grid);
    const ScalarField initial = legendre_field(g, 0.1, 0.05);
    const RunResult rn = run(normal, initial);

    FlowConfig plain = normal;
    plain.normalized = false;
    plain.sample_times.clear();
    for (double tau : taus)
      plain.sample_times.push_back(alpha == 2.0 ? tau : std::expm1((alpha - 2.0) * tau) / (alpha - 2.0));
    plain.t_end = plain.sample_times.back();
    const auto rescaled = normalize_trajectory(run(plain, initial).snapshots, alpha);

    for (double tau : taus) {
      const auto near = [tau](const Snapshot& s) { return std::abs(s.t - tau) < 1e-9; };
      const auto a = std::find_if(rn.snapshots.begin(), rn.snapshots.end(), near);
      const auto b = std::find_if(rescaled.begin(), rescaled.end(), near);
      if (a == rn.snapshots.end() || b == rescaled.end()) continue;
      ++matched;
      for (std::size_t k = 0; k < g->size(); ++k) worst = std::max(worst, std::abs(a->rho[k] - b->rho[k]));
    }
  }
  return {matched == 2 * taus.size() && worst < 1e-5,
          fmt("%zu matched times over alpha 2 and 3, max|drho| = %.3e", matched, worst)};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria{
    {"sphere fixed point", sphere_fixed_point},
    {"scalar ODE for round spheres", scalar_ode},
    {"exponential gradient decay", exponential_decay},
    {"a-priori bounds persist", bound_persistence},
    {"curvature oracle agreement", oracle_equivalence},
    {"metric evolution identity", metric_evolution},
    {"rotational barrier", subsolution},
    {"ratio blowup versus convergence", blowup_contrast},
    {"normalised versus rescaled runs", normalization_equivalence},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"starflow acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "criterion numbers to run (default: all)")
      ->check(CLI::Range(1, static_cast<int>(kCriteria.size())));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty())
    for (int k = 1; k <= static_cast<int>(kCriteria.size()); ++k) selected.push_back(k);

  int failures = 0;
  for (int k : selected) {
    const auto& [name, check] = kCriteria[static_cast<std::size_t>(k - 1)];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %s: %s | %s | %.1f s\n", k, o.pass ? "PASS" : "FAIL", name, o.detail.c_str(),
                seconds);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

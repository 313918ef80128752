#include <cmath>

#include "doctest.h"
#include "starflow/error.hpp"
#include "starflow/run.hpp"

using namespace starflow;

TEST_CASE("decay fit recovers an exact exponential") {
  std::vector<double> t, y;
  for (int k = 0; k <= 40; ++k) {
    t.push_back(0.25 * k);
    y.push_back(2.0 * std::exp(-0.7 * t.back()));
  }
  const DecayFit fit = fit_decay_rate(t, y, 1.0, 8.0);
  CHECK(fit.gamma_hat == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(fit.c_hat == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.samples == 29);
  CHECK_THROWS_AS(fit_decay_rate(t, y, 1.0, 2.0), DomainError);  // 5 samples
  y[10] = 0.0;
  CHECK_THROWS_AS(fit_decay_rate(t, y, 1.0, 8.0), DomainError);
}

TEST_CASE("gradmax window") {
  DiagnosticsSeries s(6);
  const double g[6] = {0.5, 0.2, 0.05, 0.01, 0.001, 0.0001};
  for (int k = 0; k < 6; ++k) {
    s[k].t = k;
    s[k].gradmax = g[k];
  }
  const auto w = gradmax_window(s, 0.001, 0.1);
  REQUIRE(w);
  CHECK(w->first == 2.0);
  CHECK(w->second == 4.0);
  CHECK_FALSE(gradmax_window(s, 10.0, 20.0));
}

TEST_CASE("diagnostics of a round sphere") {
  const GridPtr g = build_grid(GridMode::axisymmetric, 3, 32);
  const FlowState st{0.0, ScalarField(g, std::log(2.0)), 0, 0.0, 0.0};
  const DiagnosticsSample s = sample(st, 2.0);
  CHECK(s.ratio == 1.0);
  CHECK(s.r_min == doctest::Approx(2.0));
  CHECK(s.u_min == doctest::Approx(2.0));
  CHECK(s.F_max == doctest::Approx(0.5));
  CHECK(s.H_max == doctest::Approx(1.5));
  CHECK(s.A2_max == doctest::Approx(0.75));
  CHECK(s.gradmax == 0.0);
}

namespace {

double metric_residual(int N, double dt, bool normalized, GridMode mode = GridMode::axisymmetric) {
  FlowConfig c;
  c.alpha = 2.5;
  c.normalized = normalized;
  c.grid = GridSpec{mode, 2, N, mode == GridMode::full2d ? 2 * N : 0};
  c.t_end = 1e9;
  const GridPtr g = build_grid(c.grid);
  std::vector<double> v(g->size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double t = g->theta(g->row_of(k)), p = g->phi(g->col_of(k));
    v[k] = 0.1 * std::cos(t) + 0.05 * std::cos(2 * t);
    if (mode == GridMode::full2d) v[k] += 0.05 * std::sin(t) * std::cos(p);
  }
  FlowState s{0.0, ScalarField(g, v), 0, 0.0, 0.0};
  const FlowState before = s;
  FlowIntegrator it(c);
  it.advance(s, dt);
  REQUIRE(s.t == dt);
  return check_metric_evolution(before, s, c.alpha, normalized);
}

}  // namespace

TEST_CASE("metric evolution residual converges") {
  for (bool normalized : {true, false}) {
    const double coarse = metric_residual(32, 2e-4, normalized);
    const double fine = metric_residual(64, 1e-4, normalized);
    CHECK(coarse < 1e-4);
    CHECK(coarse / fine > 3.5);
  }
  // The full2d step limit shrinks like h^4 near the poles.
  const double coarse = metric_residual(24, 1e-5, true, GridMode::full2d);
  const double fine = metric_residual(48, 6.25e-7, true, GridMode::full2d);
  CHECK(coarse / fine > 3.5);
}

TEST_CASE("metric evolution check rejects unordered states") {
  const GridPtr g = build_grid(GridMode::axisymmetric, 2, 16);
  const FlowState a{0.0, ScalarField(g, 0.0), 0, 0.0, 0.0};
  CHECK_THROWS_AS(check_metric_evolution(a, a, 2.0), DomainError);
}

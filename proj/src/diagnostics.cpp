#include "starflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "starflow/error.hpp"
#include "starflow/geometry.hpp"
#include "starflow/kernels.hpp"

namespace starflow {

DiagnosticsSample sample(const FlowState& state, double alpha, Exec exec) {
  const GeometryExtrema ex = geometry_extrema(state.rho.grid(), state.rho.values(), alpha, exec);
  DiagnosticsSample s;
  s.t = state.t;
  s.r_min = ex.r_min;
  s.r_max = ex.r_max;
  s.ratio = ex.r_max / ex.r_min;
  s.u_min = ex.u_min;
  s.u_max = ex.u_max;
  s.F_min = ex.F_min;
  s.F_max = ex.F_max;
  s.H_max = ex.H_max;
  s.A2_max = ex.A2_max;
  s.gradmax = ex.gradmax;
  s.dt = state.stable_dt;
  return s;
}

DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> y, double t_lo, double t_hi) {
  if (t.size() != y.size()) throw DomainError("fit_decay_rate: t and y differ in length");
  double sx = 0.0, sy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(y[i] > 0.0)) {
      throw DomainError("fit_decay_rate: nonpositive value " + std::to_string(y[i]) + " at t = " +
                        std::to_string(t[i]) + "; shrink the window");
    }
    sx += t[i];
    sy += std::log(y[i]);
    ++count;
  }
  if (count < 10) {
    throw DomainError("fit_decay_rate: " + std::to_string(count) + " samples in window, need >= 10");
  }
  const double mx = sx / static_cast<double>(count);
  const double my = sy / static_cast<double>(count);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    const double dx = t[i] - mx;
    const double dy = std::log(y[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DomainError("fit_decay_rate: all samples share one time");
  const double slope = sxy / sxx;
  DecayFit fit;
  fit.gamma_hat = -slope;
  fit.c_hat = std::exp(my - slope * mx);
  const double ss_res = std::max(0.0, syy - slope * sxy);
  fit.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.samples = count;
  return fit;
}

DecayFit fit_decay_rate(const DiagnosticsSeries& series, double t_lo, double t_hi) {
  std::vector<double> t, y;
  t.reserve(series.size());
  y.reserve(series.size());
  for (const auto& s : series) {
    t.push_back(s.t);
    y.push_back(s.gradmax);
  }
  return fit_decay_rate(t, y, t_lo, t_hi);
}

std::optional<std::pair<double, double>> gradmax_window(const DiagnosticsSeries& series, double lo,
                                                        double hi) {
  std::optional<double> first, last;
  for (const auto& s : series) {
    if (s.gradmax >= lo && s.gradmax <= hi) {
      if (!first) first = s.t;
      last = s.t;
    }
  }
  if (!first) return std::nullopt;
  return std::make_pair(*first, *last);
}

namespace {

// Symmetric tensor with the block layout of JetSample: leading 2 x 2 block plus
// one value repeated over the remaining n - 2 directions.
struct BlockTensor {
  double t11 = 0.0, t12 = 0.0, t22 = 0.0, rest = 0.0;
};

BlockTensor metric(double rho, const JetSample& j) {
  const double r2 = std::exp(2.0 * rho);
  return {r2 * (1.0 + j.g1 * j.g1), r2 * j.g1 * j.g2, r2 * (1.0 + j.g2 * j.g2), r2};
}

}  // namespace

double check_metric_evolution(const FlowState& before, const FlowState& after, double alpha,
                              bool normalized) {
  const SphereGrid& grid = before.rho.grid();
  if (&grid != &after.rho.grid()) throw DomainError("check_metric_evolution: states on different grids");
  const double dt = after.t - before.t;
  if (!(dt > 0.0)) throw DomainError("check_metric_evolution: states must be ordered in time");

  const std::size_t count = grid.size();
  const int n = grid.dim();
  std::vector<double> mid(count);
  for (std::size_t k = 0; k < count; ++k) mid[k] = 0.5 * (before.rho[k] + after.rho[k]);

  std::vector<JetSample> jb(count), ja(count), jm(count), jq(count);
  covariant_jet(grid, before.rho.values(), jb);
  covariant_jet(grid, after.rho.values(), ja);
  covariant_jet(grid, mid, jm);

  // q = Phi / w, so that the tangential velocity is W = q grad(rho).
  std::vector<double> q(count), phi(count);
  for (std::size_t k = 0; k < count; ++k) {
    const PointGeometry pg = point_geometry(mid[k], jm[k], n, alpha);
    if (!pg.in_gamma2) throw AdmissibilityError(k, pg.kappa);
    phi[k] = pg.Phi;
    q[k] = pg.Phi / pg.w;
  }
  covariant_jet(grid, q, jq);

  const double source = normalized ? 2.0 : 0.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const JetSample& s = jm[k];
    const BlockTensor gb = metric(before.rho[k], jb[k]);
    const BlockTensor ga = metric(after.rho[k], ja[k]);
    const BlockTensor g = metric(mid[k], s);

    const double r = std::exp(mid[k]);
    const double root = std::sqrt(1.0 + s.grad_norm2());
    const double w = r * root;
    const double grad[2] = {s.g1, s.g2};
    const double hess[2][2] = {{s.h11, s.h12}, {s.h12, s.h22}};
    // grad r = r grad rho, hess r = r (hess rho + grad rho grad rho^T).
    double dr[2], ddr[2][2];
    for (int a = 0; a < 2; ++a) {
      dr[a] = r * grad[a];
      for (int b = 0; b < 2; ++b) ddr[a][b] = r * (hess[a][b] + grad[a] * grad[b]);
    }
    double h[2][2];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        h[a][b] = ((a == b ? r * r : 0.0) + 2.0 * dr[a] * dr[b] - r * ddr[a][b]) / w;
    const double h_rest = (r * r - r * r * s.h22) / w;
    const double gm[2][2] = {{g.t11, g.t12}, {g.t12, g.t22}};

    // W^c and its covariant derivative D_a W^c = q_a rho_c + q rho_ac.
    const double qv = q[k];
    const double dq[2] = {jq[k].g1, jq[k].g2};
    double W[2], DW[2][2];
    for (int c = 0; c < 2; ++c) {
      W[c] = qv * grad[c];
      for (int a = 0; a < 2; ++a) DW[a][c] = dq[a] * grad[c] + qv * hess[a][c];
    }
    // D_c g_ab = 2 r r_c delta_ab + r_ac r_b + r_a r_bc.
    const auto dg = [&](int c, int a, int b) {
      return (a == b ? 2.0 * r * dr[c] : 0.0) + ddr[a][c] * dr[b] + dr[a] * ddr[b][c];
    };

    const double dgdt[2][2] = {{(ga.t11 - gb.t11) / dt, (ga.t12 - gb.t12) / dt},
                               {(ga.t12 - gb.t12) / dt, (ga.t22 - gb.t22) / dt}};
    for (int a = 0; a < 2; ++a) {
      for (int b = a; b < 2; ++b) {
        double lie = 0.0;
        for (int c = 0; c < 2; ++c) lie += W[c] * dg(c, a, b) + gm[c][b] * DW[a][c] + gm[a][c] * DW[b][c];
        const double res = dgdt[a][b] + lie - (-2.0 * phi[k] * h[a][b] + source * gm[a][b]);
        worst = std::max(worst, std::abs(res));
      }
    }
    if (n > 2) {
      const double lie = W[0] * 2.0 * r * dr[0] + W[1] * 2.0 * r * dr[1] + 2.0 * g.rest * qv * s.h22;
      const double res = (ga.rest - gb.rest) / dt + lie - (-2.0 * phi[k] * h_rest + source * g.rest);
      worst = std::max(worst, std::abs(res));
    }
  }
  return worst;
}

}  // namespace starflow

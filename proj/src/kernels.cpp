#include "starflow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "starflow/error.hpp"
#include "starflow/geometry.hpp"

namespace starflow {
namespace {

constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

struct NodeSpeed {
  double rhs;
  double diffusion;
  bool admissible;
};

inline NodeSpeed node_speed(double rho, const JetSample& jet, int n, double alpha, double source) {
  const AtildeSpectrum spec = atilde_spectrum(jet, n);
  if (!spec.admissible()) return {0.0, 0.0, false};
  const double factor = std::exp(rho * (alpha - 2.0));
  const double F = spec.F();
  return {-factor * F + source, factor * spec.trace_dF(), true};
}

[[noreturn]] void throw_inadmissible(const SphereGrid& grid, std::span<const double> rho,
                                     const std::vector<JetSample>& jet, std::size_t node) {
  const PointGeometry pg = point_geometry(rho[node], jet[node], grid.dim(), 0.0);
  throw AdmissibilityError(node, pg.kappa);
}

}  // namespace

double flow_rhs(const SphereGrid& grid, std::span<const double> rho, double alpha, bool normalized,
                std::span<double> rhs, std::vector<JetSample>& scratch, Exec exec) {
  const std::size_t count = grid.size();
  if (rho.size() != count || rhs.size() != count) throw DomainError("flow_rhs: size mismatch");
  scratch.resize(count);
  covariant_jet(grid, rho, scratch, exec);

  const int n = grid.dim();
  const double source = normalized ? 1.0 : 0.0;
  double d_max = 0.0;
  std::size_t bad = kNoNode;
  const auto total = static_cast<long>(count);

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(max : d_max) reduction(min : bad)
    for (long k = 0; k < total; ++k) {
      const auto i = static_cast<std::size_t>(k);
      const NodeSpeed s = node_speed(rho[i], scratch[i], n, alpha, source);
      rhs[i] = s.rhs;
      if (!s.admissible) bad = std::min(bad, i);
      d_max = std::max(d_max, s.diffusion);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const NodeSpeed s = node_speed(rho[i], scratch[i], n, alpha, source);
      rhs[i] = s.rhs;
      if (!s.admissible && bad == kNoNode) bad = i;
      d_max = std::max(d_max, s.diffusion);
    }
  }
  if (bad != kNoNode) throw_inadmissible(grid, rho, scratch, bad);
  return d_max;
}

GeometryExtrema geometry_extrema(const SphereGrid& grid, std::span<const double> rho, double alpha,
                                 Exec exec) {
  const std::size_t count = grid.size();
  if (rho.size() != count) throw DomainError("geometry_extrema: size mismatch");
  std::vector<JetSample> jet(count);
  covariant_jet(grid, rho, jet, exec);
  const int n = grid.dim();
  constexpr double inf = std::numeric_limits<double>::infinity();

  double r_min = inf, r_max = -inf, u_min = inf, u_max = -inf, f_min = inf, f_max = -inf;
  double h_max = -inf, a2_max = -inf, grad_max = 0.0;
  int inadmissible = 0;
  const auto total = static_cast<long>(count);

  auto visit = [&](std::size_t i, double& rmn, double& rmx, double& umn, double& umx, double& fmn,
                   double& fmx, double& hmx, double& amx, double& gmx, int& bad) {
    const PointGeometry pg = point_geometry(rho[i], jet[i], n, alpha);
    rmn = std::min(rmn, pg.r);
    rmx = std::max(rmx, pg.r);
    umn = std::min(umn, pg.u);
    umx = std::max(umx, pg.u);
    if (pg.in_gamma2) {
      fmn = std::min(fmn, pg.F);
      fmx = std::max(fmx, pg.F);
    } else {
      bad += 1;
    }
    hmx = std::max(hmx, pg.H);
    amx = std::max(amx, pg.A2);
    gmx = std::max(gmx, std::sqrt(jet[i].grad_norm2()));
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(min : r_min, u_min, f_min) \
    reduction(max : r_max, u_max, f_max, h_max, a2_max, grad_max) reduction(+ : inadmissible)
    for (long k = 0; k < total; ++k) {
      visit(static_cast<std::size_t>(k), r_min, r_max, u_min, u_max, f_min, f_max, h_max, a2_max,
            grad_max, inadmissible);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      visit(i, r_min, r_max, u_min, u_max, f_min, f_max, h_max, a2_max, grad_max, inadmissible);
    }
  }

  GeometryExtrema ex;
  ex.r_min = r_min;
  ex.r_max = r_max;
  ex.u_min = u_min;
  ex.u_max = u_max;
  ex.F_min = inadmissible ? std::numeric_limits<double>::quiet_NaN() : f_min;
  ex.F_max = inadmissible ? std::numeric_limits<double>::quiet_NaN() : f_max;
  ex.H_max = h_max;
  ex.A2_max = a2_max;
  ex.gradmax = grad_max;
  ex.admissible = inadmissible == 0;
  return ex;
}

}  // namespace starflow

#pragma once

#include <span>
#include <vector>

#include "starflow/exec.hpp"
#include "starflow/sphere_grid.hpp"

namespace starflow {

/// Per-node flow speed in the log-radial gauge.
///
/// rhs[k] = -exp(rho (alpha - 2)) sigma_2^{1/2}(atilde) + (normalized ? 1 : 0).
/// Returns the largest parabolic coefficient exp(rho (alpha - 2)) * trace(dF/datilde)
/// over the grid. Throws AdmissibilityError naming the lowest-index node whose
/// curvatures are outside Gamma_2. `scratch` is resized as needed.
double flow_rhs(const SphereGrid& grid, std::span<const double> rho, double alpha, bool normalized,
                std::span<double> rhs, std::vector<JetSample>& scratch, Exec exec = Exec::serial);

/// Grid-wide extrema of the geometric quantities monitored along a run.
struct GeometryExtrema {
  double r_min = 0.0, r_max = 0.0;
  double u_min = 0.0, u_max = 0.0;
  double F_min = 0.0, F_max = 0.0;
  double H_max = 0.0;
  double A2_max = 0.0;
  double gradmax = 0.0;  // max |grad rho| = max |grad r| / r
  bool admissible = true;
};

GeometryExtrema geometry_extrema(const SphereGrid& grid, std::span<const double> rho, double alpha,
                                 Exec exec = Exec::serial);

}  // namespace starflow

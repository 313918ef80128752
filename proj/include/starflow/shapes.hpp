#pragma once

#include <string>
#include <vector>

#include "starflow/sphere_grid.hpp"

namespace starflow {

enum class ShapeKind { sphere, perturbed_sphere, offcenter_ovaloid, custom_harmonics };

const char* to_string(ShapeKind kind);
ShapeKind shape_kind_from_string(const std::string& name);

/// Real spherical harmonic term coeff * Y_l^m, with Y scaled to unit maximum.
/// m > 0 selects cos(m phi), m < 0 selects sin(|m| phi).
struct Harmonic {
  int l = 0;
  int m = 0;
  double coeff = 0.0;
};

/// Initial surface r = e^rho:
///   sphere              rho = ln radius
///   perturbed_sphere    rho = ln radius + eps * P_mode(cos theta)
///   offcenter_ovaloid   ellipsoid of revolution, semi-axes (radius, radius * elongation),
///                       centre shifted by `offset` towards the south pole
///   custom_harmonics    rho = ln radius + sum of harmonics
struct InitialShapeSpec {
  ShapeKind kind = ShapeKind::sphere;
  double radius = 1.0;
  double eps = 0.0;
  int mode = 1;
  double offset = 0.0;
  double elongation = 1.0;
  std::vector<Harmonic> harmonics;

  void validate() const;
};

/// Samples the shape on the grid without the admissibility check.
ScalarField sample_shape(const InitialShapeSpec& spec, const GridPtr& grid);

/// Largest s in [0, 1] such that the shape with its perturbation amplitude
/// (eps, harmonic coefficients) scaled by s is in Gamma_2 at every node,
/// found by bisection to relative accuracy 1e-3.
double max_admissible_scale(const InitialShapeSpec& spec, const GridPtr& grid);

/// sample_shape followed by the Gamma_2 check. A violating shape raises an
/// admissibility Error that reports the largest admissible amplitude.
ScalarField make_initial_field(const InitialShapeSpec& spec, const GridPtr& grid);

/// r_max / r_min of the continuum ovaloid, from a fine meridian sample.
double ovaloid_ratio(const InitialShapeSpec& spec);

}  // namespace starflow

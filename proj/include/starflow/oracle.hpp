#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "starflow/sphere_grid.hpp"

namespace starflow::oracle {

using Vec3 = std::array<double, 3>;

/// Embedding data at one parameter node: position, tangent vectors along the
/// two parameter directions, unit outer normal, and both fundamental forms.
///
/// For axisymmetric fields the surface is parametrised by (theta, psi) with psi
/// a rotation angle about the axis, so the two forms describe the meridian and
/// one parallel direction; the parallel curvature is repeated n - 1 times.
struct EmbeddingNode {
  Vec3 X{}, X1{}, X2{}, nu{};
  double g11 = 0.0, g12 = 0.0, g22 = 0.0;
  double h11 = 0.0, h12 = 0.0, h22 = 0.0;
};

struct EmbeddingPatch {
  std::vector<EmbeddingNode> nodes;
};

/// Finite differences on X = e^rho xi. h_ab = <X_a, nu_b> symmetrised, with nu
/// differentiated numerically.
EmbeddingPatch build_embedding(const ScalarField& rho);

struct NodeCurvatures {
  std::vector<double> kappa;  // descending, length n
  double u = 0.0;             // <X, nu>
  double H = 0.0;
  double A2 = 0.0;
};

/// Principal curvatures from det(h - kappa g) = 0 by Cholesky reduction of g.
/// Throws NumericalError where g is not positive definite.
std::vector<NodeCurvatures> oracle_curvatures(const ScalarField& rho);

/// max over nodes and parameter directions of |nu_a - h_a^l X_l|.
double oracle_weingarten_residual(const ScalarField& rho);

/// max over nodes of |X_ab - Gamma^c_ab X_c + h_ab nu| with Christoffel symbols
/// from differentiated g.
double oracle_gauss_residual(const ScalarField& rho);

/// Principal curvatures of the rotation graph x_{n+1} = profile(|x|) in R^{n+1}
/// at the given radii, by finite differences with spacing `step`. Order: the
/// parallel curvature n - 1 times, then the meridian curvature.
std::vector<std::vector<double>> graph_curvatures(const std::function<double(double)>& profile,
                                                  std::span<const double> radii, double step, int n);

}  // namespace starflow::oracle

#pragma once

#include <span>
#include <vector>

#include "starflow/small_matrix.hpp"
#include "starflow/sphere_grid.hpp"

namespace starflow {

/// Binomial coefficient C(n, k) as a double; 0 outside 0 <= k <= n.
double binomial(int n, int k);

/// Unnormalised elementary symmetric polynomial S_k; S_0 = 1.
double elementary_symmetric(std::span<const double> kappa, int k);

/// Normalised sigma_k = S_k / C(n, k).
double sigma_k(std::span<const double> kappa, int k);

/// Membership in the Garding cone Gamma_2 = {sigma_1 > 0, sigma_2 > 0}.
bool in_gamma2(std::span<const double> kappa);

/// gamma_ij = delta_ij - g_i g_j / (sqrt(1+|g|^2) (1 + sqrt(1+|g|^2))), the
/// square root of e^{2 rho} g^{-1} for the radial graph of r = e^rho.
SquareMatrix gamma_matrix(std::span<const double> grad);

struct CurvatureMatrix {
  SquareMatrix atilde;  // dimensionless
  SquareMatrix a;       // a = e^{-rho} (1 + |grad rho|^2)^{-1/2} atilde, units 1/length
};

/// atilde = gamma (I + grad rho grad rho^T - hess rho) gamma, and its scaling a.
CurvatureMatrix atilde_matrix(double rho, std::span<const double> grad, const SquareMatrix& hess);

/// Eigenvalues of a symmetric matrix in descending order: closed form for
/// diagonal and 2 x 2 input, cyclic Jacobi otherwise.
std::vector<double> principal_curvatures(const SquareMatrix& a);
inline std::vector<double> principal_curvatures(const CurvatureMatrix& cm) {
  return principal_curvatures(cm.a);
}

struct PointGeometry {
  double r = 0.0;
  double w = 0.0;    // sqrt(r^2 + |grad r|^2)
  double u = 0.0;    // support function <X, nu> = r^2 / w
  std::vector<double> kappa;  // descending
  double F = 0.0;    // sigma_2^{1/2}; NaN outside Gamma_2
  double Phi = 0.0;  // r^alpha F
  double H = 0.0;
  double A2 = 0.0;
  bool in_gamma2 = false;
};

/// General route: explicit n x n matrices, eigenvalues via principal_curvatures.
PointGeometry point_geometry(double rho, std::span<const double> grad, const SquareMatrix& hess,
                             double alpha);

/// Eigen-structure of atilde for a jet with the block form of JetSample:
/// a 2 x 2 leading block with eigenvalues (lead_hi, lead_lo) and the value
/// `rest` repeated n - 2 times.
struct AtildeSpectrum {
  int n = 2;
  double trace2 = 0.0;  // trace of the leading block
  double det2 = 0.0;    // determinant of the leading block
  double lead_hi = 0.0;
  double lead_lo = 0.0;
  double rest = 0.0;
  double grad_norm2 = 0.0;

  double S1() const noexcept { return trace2 + (n - 2) * rest; }
  double S2() const noexcept {
    return det2 + trace2 * (n - 2) * rest + 0.5 * (n - 2) * (n - 3) * rest * rest;
  }
  bool admissible() const noexcept { return S1() > 0.0 && S2() > 0.0; }
  /// sigma_2^{1/2}(atilde); NaN when not admissible.
  double F() const noexcept;
  /// Sum of df/dlambda_i for f = sigma_2^{1/2}: S1 / (n F).
  double trace_dF() const noexcept;
  /// Eigenvalues of atilde, descending.
  std::vector<double> eigenvalues() const;
};

AtildeSpectrum atilde_spectrum(const JetSample& jet, int n);

/// Block fast path; agrees with the general route to rounding.
PointGeometry point_geometry(double rho, const JetSample& jet, int n, double alpha);

}  // namespace starflow

#include "starflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "starflow/error.hpp"

namespace starflow {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

double elementary_symmetric(std::span<const double> kappa, int k) {
  const int n = static_cast<int>(kappa.size());
  if (k < 0 || k > n) throw DomainError("elementary_symmetric: k out of range");
  // Coefficients of prod (1 + kappa_i x), truncated at degree k.
  std::vector<double> e(static_cast<std::size_t>(k + 1), 0.0);
  e[0] = 1.0;
  for (double x : kappa)
    for (int j = k; j >= 1; --j) e[static_cast<std::size_t>(j)] += x * e[static_cast<std::size_t>(j - 1)];
  return e[static_cast<std::size_t>(k)];
}

double sigma_k(std::span<const double> kappa, int k) {
  return elementary_symmetric(kappa, k) / binomial(static_cast<int>(kappa.size()), k);
}

bool in_gamma2(std::span<const double> kappa) {
  return elementary_symmetric(kappa, 1) > 0.0 && elementary_symmetric(kappa, 2) > 0.0;
}

SquareMatrix gamma_matrix(std::span<const double> grad) {
  const int n = static_cast<int>(grad.size());
  double v = 0.0;
  for (double g : grad) v += g * g;
  const double s = std::sqrt(1.0 + v);
  const double c = 1.0 / (s * (1.0 + s));
  SquareMatrix gamma = SquareMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gamma(i, j) -= c * grad[static_cast<std::size_t>(i)] * grad[static_cast<std::size_t>(j)];
  return gamma;
}

CurvatureMatrix atilde_matrix(double rho, std::span<const double> grad, const SquareMatrix& hess) {
  const int n = static_cast<int>(grad.size());
  if (hess.dim() != n) throw DomainError("atilde_matrix: gradient and Hessian dimensions differ");
  SquareMatrix inner = SquareMatrix::identity(n) - hess;
  double v = 0.0;
  for (int i = 0; i < n; ++i) {
    v += grad[static_cast<std::size_t>(i)] * grad[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) inner(i, j) += grad[static_cast<std::size_t>(i)] * grad[static_cast<std::size_t>(j)];
  }
  const SquareMatrix gamma = gamma_matrix(grad);
  SquareMatrix atilde = gamma * inner * gamma;
  // Symmetrise away the rounding of the triple product.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double m = 0.5 * (atilde(i, j) + atilde(j, i));
      atilde(i, j) = atilde(j, i) = m;
    }
  const double scale = std::exp(-rho) / std::sqrt(1.0 + v);
  return {atilde, atilde * scale};
}

std::vector<double> principal_curvatures(const SquareMatrix& a) {
  const int n = a.dim();
  std::vector<double> k(static_cast<std::size_t>(n));
  if (a.is_diagonal()) {
    for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = a(i, i);
  } else if (n == 2) {
    const double mean = 0.5 * (a(0, 0) + a(1, 1));
    const double half = 0.5 * (a(0, 0) - a(1, 1));
    const double off = 0.5 * (a(0, 1) + a(1, 0));
    const double rad = std::hypot(half, off);
    k[0] = mean + rad;
    k[1] = mean - rad;
  } else {
    return jacobi_eigenvalues(a);
  }
  std::sort(k.begin(), k.end(), std::greater<>());
  return k;
}

namespace {

void fill_from_kappa(PointGeometry& pg, double alpha) {
  pg.H = 0.0;
  pg.A2 = 0.0;
  for (double k : pg.kappa) {
    pg.H += k;
    pg.A2 += k * k;
  }
  pg.in_gamma2 = in_gamma2(pg.kappa);
  pg.F = pg.in_gamma2 ? std::sqrt(sigma_k(pg.kappa, 2)) : std::numeric_limits<double>::quiet_NaN();
  pg.Phi = std::pow(pg.r, alpha) * pg.F;
}

}  // namespace

PointGeometry point_geometry(double rho, std::span<const double> grad, const SquareMatrix& hess,
                             double alpha) {
  PointGeometry pg;
  double v = 0.0;
  for (double g : grad) v += g * g;
  pg.r = std::exp(rho);
  pg.w = pg.r * std::sqrt(1.0 + v);
  pg.u = pg.r * pg.r / pg.w;
  pg.kappa = principal_curvatures(atilde_matrix(rho, grad, hess));
  fill_from_kappa(pg, alpha);
  return pg;
}

double AtildeSpectrum::F() const noexcept {
  if (!admissible()) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(S2() / binomial(n, 2));
}

double AtildeSpectrum::trace_dF() const noexcept { return S1() / (n * F()); }

std::vector<double> AtildeSpectrum::eigenvalues() const {
  std::vector<double> ev;
  ev.reserve(static_cast<std::size_t>(n));
  ev.push_back(lead_hi);
  ev.push_back(lead_lo);
  for (int i = 2; i < n; ++i) ev.push_back(rest);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

AtildeSpectrum atilde_spectrum(const JetSample& s, int n) {
  AtildeSpectrum out;
  out.n = n;
  const double v = s.grad_norm2();
  out.grad_norm2 = v;
  const double root = std::sqrt(1.0 + v);
  const double c = 1.0 / (root * (1.0 + root));
  const double g11 = 1.0 - c * s.g1 * s.g1;
  const double g12 = -c * s.g1 * s.g2;
  const double g22 = 1.0 - c * s.g2 * s.g2;
  const double m11 = 1.0 + s.g1 * s.g1 - s.h11;
  const double m12 = s.g1 * s.g2 - s.h12;
  const double m22 = 1.0 + s.g2 * s.g2 - s.h22;
  // (gamma M) then (gamma M) gamma, exploiting symmetry of the result.
  const double p11 = g11 * m11 + g12 * m12;
  const double p12 = g11 * m12 + g12 * m22;
  const double p21 = g12 * m11 + g22 * m12;
  const double p22 = g12 * m12 + g22 * m22;
  const double a11 = p11 * g11 + p12 * g12;
  const double a12 = 0.5 * ((p11 * g12 + p12 * g22) + (p21 * g11 + p22 * g12));
  const double a22 = p21 * g12 + p22 * g22;

  out.trace2 = a11 + a22;
  out.det2 = a11 * a22 - a12 * a12;
  const double mean = 0.5 * out.trace2;
  const double rad = std::hypot(0.5 * (a11 - a22), a12);
  out.lead_hi = mean + rad;
  out.lead_lo = mean - rad;
  out.rest = 1.0 - s.h22;
  return out;
}

PointGeometry point_geometry(double rho, const JetSample& jet, int n, double alpha) {
  const AtildeSpectrum spec = atilde_spectrum(jet, n);
  PointGeometry pg;
  const double root = std::sqrt(1.0 + spec.grad_norm2);
  pg.r = std::exp(rho);
  pg.w = pg.r * root;
  pg.u = pg.r / root;
  const double scale = 1.0 / (pg.r * root);
  pg.kappa = spec.eigenvalues();
  for (double& k : pg.kappa) k *= scale;
  pg.H = scale * spec.S1();
  pg.A2 = 0.0;
  for (double k : pg.kappa) pg.A2 += k * k;
  pg.in_gamma2 = spec.admissible();
  pg.F = pg.in_gamma2 ? scale * spec.F() : std::numeric_limits<double>::quiet_NaN();
  pg.Phi = std::pow(pg.r, alpha) * pg.F;
  return pg;
}

}  // namespace starflow

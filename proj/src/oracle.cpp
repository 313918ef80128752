#include "starflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "starflow/error.hpp"

namespace starflow::oracle {
namespace {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Centred first and second differences of radius 1 (order 2) or 2 (order 4).
// `f(o)` returns the sample at integer offset o.
template <class Fn>
Vec3 diff1(Fn&& f, int radius, double step) {
  if (radius == 1) return (0.5 / step) * (f(1) - f(-1));
  return (1.0 / (12.0 * step)) * (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2));
}

template <class Fn>
Vec3 diff2(Fn&& f, int radius, double step) {
  if (radius == 1) return (1.0 / (step * step)) * (f(1) - 2.0 * f(0) + f(-1));
  return (1.0 / (12.0 * step * step)) * (-1.0 * f(-2) + 16.0 * f(-1) - 30.0 * f(0) + 16.0 * f(1) - f(2));
}

template <class Fn>
double diff1s(Fn&& f, int radius, double step) {
  if (radius == 1) return (f(1) - f(-1)) / (2.0 * step);
  return (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12.0 * step);
}

// Local parameter patch around one node: X at offsets [-2R, 2R]^2.
class LocalPatch {
 public:
  using Sampler = std::function<Vec3(int, int)>;
  using Outward = std::function<bool(const Vec3& nu, const Vec3& X)>;

  LocalPatch(const Sampler& sampler, const Outward& outward, int radius, double step1, double step2)
      : radius_(radius), span_(2 * radius), width_(4 * radius + 1), step1_(step1), step2_(step2) {
    x_.resize(static_cast<std::size_t>(width_ * width_));
    for (int a = -span_; a <= span_; ++a)
      for (int b = -span_; b <= span_; ++b) x_[slot(a, b)] = sampler(a, b);
    nu_.resize(x_.size());
    for (int a = -radius_; a <= radius_; ++a)
      for (int b = -radius_; b <= radius_; ++b) {
        Vec3 n = cross(tangent1(a, b), tangent2(a, b));
        const double len = norm(n);
        if (!(len > 0.0)) throw NumericalError("oracle: degenerate parametrisation");
        n = (1.0 / len) * n;
        if (!outward(n, x(a, b))) n = -1.0 * n;
        nu_[slot(a, b)] = n;
      }
  }

  const Vec3& x(int a, int b) const { return x_[slot(a, b)]; }
  const Vec3& nu(int a, int b) const { return nu_[slot(a, b)]; }

  Vec3 tangent1(int a, int b) const {
    return diff1([&](int o) { return x(a + o, b); }, radius_, step1_);
  }
  Vec3 tangent2(int a, int b) const {
    return diff1([&](int o) { return x(a, b + o); }, radius_, step2_);
  }
  Vec3 nu1() const { return diff1([&](int o) { return nu(o, 0); }, radius_, step1_); }
  Vec3 nu2() const { return diff1([&](int o) { return nu(0, o); }, radius_, step2_); }

  Vec3 x11() const { return diff2([&](int o) { return x(o, 0); }, radius_, step1_); }
  Vec3 x22() const { return diff2([&](int o) { return x(0, o); }, radius_, step2_); }
  Vec3 x12() const {
    return diff1([&](int o) { return tangent2(o, 0); }, radius_, step1_);
  }

  // Metric component (p, q) at offset (a, b).
  double metric(int p, int q, int a, int b) const {
    const Vec3 t1 = tangent1(a, b);
    const Vec3 t2 = tangent2(a, b);
    const Vec3& u = p == 0 ? t1 : t2;
    const Vec3& v = q == 0 ? t1 : t2;
    return dot(u, v);
  }
  // d/dparam_c of g_pq at the centre.
  double metric_derivative(int c, int p, int q) const {
    if (c == 0) return diff1s([&](int o) { return metric(p, q, o, 0); }, radius_, step1_);
    return diff1s([&](int o) { return metric(p, q, 0, o); }, radius_, step2_);
  }

  EmbeddingNode centre() const {
    EmbeddingNode e;
    e.X = x(0, 0);
    e.X1 = tangent1(0, 0);
    e.X2 = tangent2(0, 0);
    e.nu = nu(0, 0);
    e.g11 = dot(e.X1, e.X1);
    e.g12 = dot(e.X1, e.X2);
    e.g22 = dot(e.X2, e.X2);
    const Vec3 n1 = nu1();
    const Vec3 n2 = nu2();
    e.h11 = dot(e.X1, n1);
    e.h22 = dot(e.X2, n2);
    e.h12 = 0.5 * (dot(e.X1, n2) + dot(e.X2, n1));
    return e;
  }

 private:
  std::size_t slot(int a, int b) const {
    return static_cast<std::size_t>((a + span_) * width_ + (b + span_));
  }

  int radius_, span_, width_;
  double step1_, step2_;
  std::vector<Vec3> x_, nu_;
};

constexpr int kGridStencilRadius = 2;  // fourth-order differences on sphere grids

// Reflect a (row, col) pair that may lie beyond a pole back onto the grid.
std::size_t reflected_index(const SphereGrid& grid, int row, int col) {
  const int rows = grid.n_polar();
  const int m = grid.n_azimuth();
  if (row < 0) {
    row = -1 - row;
    col += m / 2;
  } else if (row >= rows) {
    row = 2 * rows - 1 - row;
    col += m / 2;
  }
  col %= m;
  if (col < 0) col += m;
  return grid.index(row, col);
}

LocalPatch grid_patch(const ScalarField& rho, std::size_t k) {
  const SphereGrid& grid = rho.grid();
  const int radius = kGridStencilRadius;
  const double h = grid.polar_step();
  const int i0 = grid.row_of(k);
  const auto outward = [](const Vec3& nu, const Vec3& X) { return dot(nu, X) > 0.0; };

  if (grid.mode() == GridMode::axisymmetric) {
    const LocalPatch::Sampler sampler = [&rho, &grid, h, i0](int a, int b) {
      const int row = i0 + a;
      const double theta = (row + 0.5) * h;
      const double r = std::exp(rho[reflected_index(grid, row, 0)]);
      const double psi = b * h;
      return Vec3{r * std::sin(theta) * std::cos(psi), r * std::sin(theta) * std::sin(psi),
                  r * std::cos(theta)};
    };
    return LocalPatch(sampler, outward, radius, h, h);
  }
  const int j0 = grid.col_of(k);
  const double dphi = grid.azimuth_step();
  const LocalPatch::Sampler sampler = [&rho, &grid, h, dphi, i0, j0](int a, int b) {
    const int row = i0 + a;
    const int col = j0 + b;
    const double theta = (row + 0.5) * h;
    const double phi = col * dphi;
    const double r = std::exp(rho[reflected_index(grid, row, col)]);
    return Vec3{r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
                r * std::cos(theta)};
  };
  return LocalPatch(sampler, outward, radius, h, dphi);
}

struct Eigen2 {
  double value[2];
  double vec[2][2];  // vec[k] is the generalised eigenvector for value[k]
};

// Solves h v = kappa g v through g = L L^T.
Eigen2 generalized_eigen(const EmbeddingNode& e) {
  if (!(e.g11 > 0.0)) throw NumericalError("oracle: metric is not positive definite");
  const double l11 = std::sqrt(e.g11);
  const double l21 = e.g12 / l11;
  const double d = e.g22 - l21 * l21;
  if (!(d > 0.0)) throw NumericalError("oracle: metric is not positive definite");
  const double l22 = std::sqrt(d);
  // C = L^{-1} h L^{-T}
  const double b11 = e.h11 / l11;
  const double b12 = e.h12 / l11;
  const double b21 = (e.h12 - l21 * b11) / l22;
  const double b22 = (e.h22 - l21 * b12) / l22;
  const double c11 = b11 / l11;
  const double c12 = (b12 - c11 * l21) / l22;
  const double c21 = b21 / l11;
  const double c22 = (b22 - c21 * l21) / l22;
  const double p = c11, s = c22, q = 0.5 * (c12 + c21);

  Eigen2 out;
  const double mean = 0.5 * (p + s);
  const double rad = std::hypot(0.5 * (p - s), q);
  out.value[0] = mean + rad;
  out.value[1] = mean - rad;
  for (int k = 0; k < 2; ++k) {
    const double lam = out.value[k];
    double y0 = q, y1 = lam - p;
    const double z0 = lam - s, z1 = q;
    if (std::hypot(z0, z1) > std::hypot(y0, y1)) {
      y0 = z0;
      y1 = z1;
    }
    if (y0 == 0.0 && y1 == 0.0) {
      y0 = k == 0 ? 1.0 : 0.0;
      y1 = k == 0 ? 0.0 : 1.0;
    }
    // v = L^{-T} y
    const double v1 = y1 / l22;
    const double v0 = (y0 - l21 * v1) / l11;
    out.vec[k][0] = v0;
    out.vec[k][1] = v1;
  }
  return out;
}

NodeCurvatures curvatures_from(const EmbeddingNode& e, int n, bool rotational) {
  const Eigen2 eig = generalized_eigen(e);
  NodeCurvatures nc;
  if (!rotational || n == 2) {
    nc.kappa = {eig.value[0], eig.value[1]};
    if (rotational) {
      // keep the meridian/parallel identity irrelevant for n = 2
    }
  } else {
    const double len1 = norm(e.X1), len2 = norm(e.X2);
    const auto along_rotation = [&](int k) {
      return std::abs(eig.vec[k][1]) * len2 > std::abs(eig.vec[k][0]) * len1;
    };
    const int parallel = along_rotation(0) ? 0 : 1;
    nc.kappa.assign(static_cast<std::size_t>(n - 1), eig.value[parallel]);
    nc.kappa.push_back(eig.value[1 - parallel]);
  }
  std::sort(nc.kappa.begin(), nc.kappa.end(), std::greater<>());
  nc.u = dot(e.X, e.nu);
  for (double k : nc.kappa) {
    nc.H += k;
    nc.A2 += k * k;
  }
  return nc;
}

}  // namespace

EmbeddingPatch build_embedding(const ScalarField& rho) {
  EmbeddingPatch patch;
  patch.nodes.resize(rho.size());
  for (std::size_t k = 0; k < rho.size(); ++k) patch.nodes[k] = grid_patch(rho, k).centre();
  return patch;
}

std::vector<NodeCurvatures> oracle_curvatures(const ScalarField& rho) {
  const SphereGrid& grid = rho.grid();
  const bool rotational = grid.mode() == GridMode::axisymmetric;
  const EmbeddingPatch patch = build_embedding(rho);
  std::vector<NodeCurvatures> out;
  out.reserve(patch.nodes.size());
  for (const EmbeddingNode& e : patch.nodes) out.push_back(curvatures_from(e, grid.dim(), rotational));
  return out;
}

double oracle_weingarten_residual(const ScalarField& rho) {
  double worst = 0.0;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    const LocalPatch patch = grid_patch(rho, k);
    const EmbeddingNode e = patch.centre();
    const double det = e.g11 * e.g22 - e.g12 * e.g12;
    const double gi11 = e.g22 / det, gi12 = -e.g12 / det, gi22 = e.g11 / det;
    const double h[2][2] = {{e.h11, e.h12}, {e.h12, e.h22}};
    const double gi[2][2] = {{gi11, gi12}, {gi12, gi22}};
    const Vec3 dnu[2] = {patch.nu1(), patch.nu2()};
    const Vec3 tang[2] = {e.X1, e.X2};
    for (int a = 0; a < 2; ++a) {
      Vec3 res = dnu[a];
      for (int l = 0; l < 2; ++l) {
        double mixed = 0.0;  // h_a^l = g^{lm} h_ma
        for (int m = 0; m < 2; ++m) mixed += gi[l][m] * h[m][a];
        res = res - mixed * tang[l];
      }
      worst = std::max(worst, norm(res));
    }
  }
  return worst;
}

double oracle_gauss_residual(const ScalarField& rho) {
  double worst = 0.0;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    const LocalPatch patch = grid_patch(rho, k);
    const EmbeddingNode e = patch.centre();
    const double det = e.g11 * e.g22 - e.g12 * e.g12;
    const double gi[2][2] = {{e.g22 / det, -e.g12 / det}, {-e.g12 / det, e.g11 / det}};
    const double h[2][2] = {{e.h11, e.h12}, {e.h12, e.h22}};
    const Vec3 second[2][2] = {{patch.x11(), patch.x12()}, {patch.x12(), patch.x22()}};
    const Vec3 tang[2] = {e.X1, e.X2};
    double dg[2][2][2];  // dg[c][p][q] = d_c g_pq
    for (int c = 0; c < 2; ++c)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) dg[c][p][q] = patch.metric_derivative(c, p, q);
    for (int a = 0; a < 2; ++a)
      for (int b = a; b < 2; ++b) {
        Vec3 res = second[a][b] + h[a][b] * e.nu;
        for (int c = 0; c < 2; ++c) {
          double christoffel = 0.0;
          for (int d = 0; d < 2; ++d)
            christoffel += 0.5 * gi[c][d] * (dg[a][b][d] + dg[b][a][d] - dg[d][a][b]);
          res = res - christoffel * tang[c];
        }
        worst = std::max(worst, norm(res));
      }
  }
  return worst;
}

std::vector<std::vector<double>> graph_curvatures(const std::function<double(double)>& profile,
                                                  std::span<const double> radii, double step, int n) {
  if (n < 2) throw DomainError("graph_curvatures: n must be at least 2");
  constexpr int radius = 1;
  std::vector<std::vector<double>> out;
  out.reserve(radii.size());
  // The epigraph lies above the graph, so the outer normal points down.
  const auto outward = [](const Vec3& nu, const Vec3&) { return nu[2] < 0.0; };
  for (double s0 : radii) {
    if (!(s0 - 2 * radius * step > 0.0)) {
      throw DomainError("graph_curvatures: radius " + std::to_string(s0) + " too close to the axis");
    }
    const LocalPatch::Sampler sampler = [&](int a, int b) {
      const double s = s0 + a * step;
      const double psi = b * step;
      return Vec3{s * std::cos(psi), s * std::sin(psi), profile(s)};
    };
    const LocalPatch patch(sampler, outward, radius, step, step);
    const Eigen2 eig = generalized_eigen(patch.centre());
    const EmbeddingNode e = patch.centre();
    const double len1 = norm(e.X1), len2 = norm(e.X2);
    const int parallel =
        std::abs(eig.vec[0][1]) * len2 > std::abs(eig.vec[0][0]) * len1 ? 0 : 1;
    std::vector<double> kappa(static_cast<std::size_t>(n - 1), eig.value[parallel]);
    kappa.push_back(eig.value[1 - parallel]);
    out.push_back(std::move(kappa));
  }
  return out;
}

}  // namespace starflow::oracle

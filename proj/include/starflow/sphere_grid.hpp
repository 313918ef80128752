#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "starflow/exec.hpp"

namespace starflow {

enum class GridMode { axisymmetric, full2d };

const char* to_string(GridMode mode);
GridMode grid_mode_from_string(const std::string& name);

struct GridSpec {
  GridMode mode = GridMode::axisymmetric;
  int n = 2;           // hypersurface dimension: number of principal curvatures
  int n_polar = 128;   // cells in theta
  int n_azimuth = 0;   // cells in phi, full2d only
};

/// Cell-centred grid on S^n.
///
/// Polar nodes sit at theta_i = (i + 1/2) h with h = pi / N, so no node touches
/// a pole. In full2d mode (n = 2 only) the azimuthal direction is periodic with
/// M nodes phi_j = j * 2 pi / M; M must be even so that reflection across a
/// pole maps columns onto columns. Node k = i * M + j (M = 1 when axisymmetric).
class SphereGrid {
 public:
  static constexpr int kMinPolar = 16;
  static constexpr int kMinAzimuth = 16;

  explicit SphereGrid(const GridSpec& spec);

  GridMode mode() const noexcept { return spec_.mode; }
  const GridSpec& spec() const noexcept { return spec_; }
  int dim() const noexcept { return spec_.n; }
  int n_polar() const noexcept { return spec_.n_polar; }
  int n_azimuth() const noexcept { return spec_.mode == GridMode::full2d ? spec_.n_azimuth : 1; }
  std::size_t size() const noexcept { return theta_.size() * static_cast<std::size_t>(n_azimuth()); }

  double polar_step() const noexcept { return h_; }
  double azimuth_step() const noexcept { return dphi_; }

  double theta(int i) const { return theta_[static_cast<std::size_t>(i)]; }
  double phi(int j) const { return phi_[static_cast<std::size_t>(j)]; }
  std::span<const double> thetas() const noexcept { return theta_; }
  std::span<const double> phis() const noexcept { return phi_; }

  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_azimuth()) +
           static_cast<std::size_t>(j);
  }
  int row_of(std::size_t k) const noexcept { return static_cast<int>(k / static_cast<std::size_t>(n_azimuth())); }
  int col_of(std::size_t k) const noexcept { return static_cast<int>(k % static_cast<std::size_t>(n_azimuth())); }

  /// Smallest physical distance between neighbouring nodes; sets the parabolic step.
  double min_spacing() const noexcept;

 private:
  GridSpec spec_;
  double h_ = 0.0;
  double dphi_ = 0.0;
  std::vector<double> theta_;
  std::vector<double> phi_;
};

using GridPtr = std::shared_ptr<const SphereGrid>;

GridPtr build_grid(const GridSpec& spec);
GridPtr build_grid(GridMode mode, int n, int n_polar, int n_azimuth = 0);

/// One finite real value per grid node.
class ScalarField {
 public:
  ScalarField(GridPtr grid, std::vector<double> values);
  explicit ScalarField(GridPtr grid, double fill = 0.0);

  const SphereGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator[](std::size_t k) { return values_[k]; }
  std::size_t size() const noexcept { return values_.size(); }

  bool all_finite() const noexcept;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Gradient and Hessian at one node in the orthonormal frame (e_theta, e_phi, ...).
///
/// The n x n Hessian has the block form [[h11, h12], [h12, h22]] (+) h22 * I_{n-2}
/// and the gradient is (g1, g2, 0, ..., 0). Axisymmetric fields have g2 = h12 = 0
/// and h22 = cot(theta) * rho'(theta), repeated over all equatorial directions.
struct JetSample {
  double g1 = 0.0;
  double g2 = 0.0;
  double h11 = 0.0;
  double h12 = 0.0;
  double h22 = 0.0;

  double grad_norm2() const noexcept { return g1 * g1 + g2 * g2; }
};

struct CovariantJet {
  int n = 2;
  std::vector<JetSample> nodes;

  std::vector<double> grad_vector(std::size_t k) const;
  /// Row-major n x n Hessian.
  std::vector<double> hess_matrix(std::size_t k) const;
};

/// Discrete covariant gradient and Hessian with respect to the round metric.
///
/// Fourth-order centred differences with even reflection across the poles, in
/// theta and (full2d) in phi. Nodes next to a pole lose one order through the
/// cot(theta) factor, so the grid-wide error is O(h^3) or better.
CovariantJet covariant_jet(const ScalarField& field, Exec exec = Exec::serial);

/// Same as covariant_jet but over a raw value array laid out on `grid`.
void covariant_jet(const SphereGrid& grid, std::span<const double> values,
                   std::span<JetSample> out, Exec exec = Exec::serial);

}  // namespace starflow

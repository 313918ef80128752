#include "starflow/sphere_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "starflow/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace starflow {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

const char* to_string(GridMode mode) {
  return mode == GridMode::axisymmetric ? "axisymmetric" : "full2d";
}

GridMode grid_mode_from_string(const std::string& name) {
  if (name == "axisymmetric") return GridMode::axisymmetric;
  if (name == "full2d") return GridMode::full2d;
  throw ConfigError("unknown grid mode '" + name + "' (expected axisymmetric or full2d)");
}

SphereGrid::SphereGrid(const GridSpec& spec) : spec_(spec) {
  if (spec.n < 2) {
    throw DomainError("grid dimension n = " + std::to_string(spec.n) +
                      " < 2: sigma_2 needs at least two principal curvatures");
  }
  if (spec.n_polar < kMinPolar) {
    throw DomainError("polar resolution " + std::to_string(spec.n_polar) + " below minimum " +
                      std::to_string(kMinPolar));
  }
  if (spec.mode == GridMode::full2d) {
    if (spec.n != 2) throw DomainError("full2d grids require n = 2");
    if (spec.n_azimuth < kMinAzimuth) {
      throw DomainError("azimuthal resolution " + std::to_string(spec.n_azimuth) +
                        " below minimum " + std::to_string(kMinAzimuth));
    }
    if (spec.n_azimuth % 2 != 0) throw DomainError("azimuthal resolution must be even");
  }

  h_ = std::numbers::pi / spec.n_polar;
  theta_.resize(static_cast<std::size_t>(spec.n_polar));
  for (int i = 0; i < spec.n_polar; ++i) theta_[static_cast<std::size_t>(i)] = (i + 0.5) * h_;

  if (spec.mode == GridMode::full2d) {
    dphi_ = 2.0 * std::numbers::pi / spec.n_azimuth;
    phi_.resize(static_cast<std::size_t>(spec.n_azimuth));
    for (int j = 0; j < spec.n_azimuth; ++j) phi_[static_cast<std::size_t>(j)] = j * dphi_;
  } else {
    phi_ = {0.0};
  }
}

double SphereGrid::min_spacing() const noexcept {
  if (spec_.mode == GridMode::axisymmetric) return h_;
  return std::min(h_, std::sin(0.5 * h_) * dphi_);
}

GridPtr build_grid(const GridSpec& spec) { return std::make_shared<const SphereGrid>(spec); }

GridPtr build_grid(GridMode mode, int n, int n_polar, int n_azimuth) {
  return build_grid(GridSpec{mode, n, n_polar, n_azimuth});
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw DomainError("scalar field without a grid");
  if (values_.size() != grid_->size()) {
    throw DomainError("scalar field has " + std::to_string(values_.size()) +
                      " values for a grid of " + std::to_string(grid_->size()) + " nodes");
  }
  if (!all_finite()) throw DomainError("scalar field contains non-finite values");
}

ScalarField::ScalarField(GridPtr grid, double fill)
    : ScalarField(grid, std::vector<double>(grid ? grid->size() : 0, fill)) {}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

std::vector<double> CovariantJet::grad_vector(std::size_t k) const {
  std::vector<double> g(static_cast<std::size_t>(n), 0.0);
  g[0] = nodes[k].g1;
  g[1] = nodes[k].g2;
  return g;
}

std::vector<double> CovariantJet::hess_matrix(std::size_t k) const {
  const auto dim = static_cast<std::size_t>(n);
  std::vector<double> m(dim * dim, 0.0);
  const JetSample& s = nodes[k];
  m[0] = s.h11;
  m[1] = s.h12;
  m[dim] = s.h12;
  m[dim + 1] = s.h22;
  for (std::size_t i = 2; i < dim; ++i) m[i * dim + i] = s.h22;
  return m;
}

}  // namespace starflow

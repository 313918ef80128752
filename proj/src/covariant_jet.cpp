#include "starflow/sphere_grid.hpp"

#include <cmath>

#include "starflow/error.hpp"

namespace starflow {
namespace {

// Fourth-order centred stencils over f[-2..2], written in differences so that
// constant data give exactly zero.
inline double d1_4(const double* f, double step) {
  return (8.0 * (f[3] - f[1]) - (f[4] - f[0])) / (12.0 * step);
}
inline double d2_4(const double* f, double step) {
  return (16.0 * ((f[1] - f[2]) + (f[3] - f[2])) - ((f[0] - f[2]) + (f[4] - f[2]))) / (12.0 * step * step);
}

// Even reflection across each pole: row -1 mirrors row 0, row N mirrors row N - 1.
inline double axis_value(std::span<const double> v, int row, int n_rows) {
  if (row < 0) row = -1 - row;
  if (row >= n_rows) row = 2 * n_rows - 1 - row;
  return v[static_cast<std::size_t>(row)];
}

inline JetSample axisymmetric_node(const SphereGrid& grid, std::span<const double> v, int i) {
  const int n_rows = grid.n_polar();
  const double h = grid.polar_step();
  double f[5];
  for (int a = 0; a < 5; ++a) f[a] = axis_value(v, i + a - 2, n_rows);
  JetSample s;
  s.g1 = d1_4(f, h);
  s.h11 = d2_4(f, h);
  s.h22 = s.g1 / std::tan(grid.theta(i));
  return s;
}

// Value at (row, col) with rows extended across the poles: row -1 is row 0
// seen from the antipodal meridian, row N is row N-1 likewise.
inline double full_value(const SphereGrid& grid, std::span<const double> v, int row, int col) {
  const int n_rows = grid.n_polar();
  const int m = grid.n_azimuth();
  if (row < 0) {
    row = -1 - row;
    col += m / 2;
  } else if (row >= n_rows) {
    row = 2 * n_rows - 1 - row;
    col += m / 2;
  }
  col %= m;
  if (col < 0) col += m;
  return v[grid.index(row, col)];
}

inline JetSample full2d_node(const SphereGrid& grid, std::span<const double> v, int i, int j) {
  const double h = grid.polar_step();
  const double dphi = grid.azimuth_step();
  double col[5];
  double row[5];
  double dphi_rows[5];
  for (int a = 0; a < 5; ++a) {
    col[a] = full_value(grid, v, i + a - 2, j);
    row[a] = full_value(grid, v, i, j + a - 2);
    double f[5];
    for (int b = 0; b < 5; ++b) f[b] = full_value(grid, v, i + a - 2, j + b - 2);
    dphi_rows[a] = d1_4(f, dphi);
  }
  const double rt = d1_4(col, h);
  const double rtt = d2_4(col, h);
  const double rp = d1_4(row, dphi);
  const double rpp = d2_4(row, dphi);
  const double rtp = d1_4(dphi_rows, h);

  const double theta = grid.theta(i);
  const double sn = std::sin(theta);
  const double ct = std::cos(theta) / sn;
  JetSample s;
  s.g1 = rt;
  s.g2 = rp / sn;
  s.h11 = rtt;
  s.h12 = (rtp - ct * rp) / sn;
  s.h22 = rpp / (sn * sn) + ct * rt;
  return s;
}

inline JetSample jet_node(const SphereGrid& grid, std::span<const double> v, std::size_t k) {
  if (grid.mode() == GridMode::axisymmetric) return axisymmetric_node(grid, v, static_cast<int>(k));
  return full2d_node(grid, v, grid.row_of(k), grid.col_of(k));
}

}  // namespace

void covariant_jet(const SphereGrid& grid, std::span<const double> values, std::span<JetSample> out,
                   Exec exec) {
  if (values.size() != grid.size() || out.size() != grid.size()) {
    throw DomainError("covariant_jet: array sizes do not match the grid");
  }
  const auto count = static_cast<long>(grid.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < count; ++k) {
      out[static_cast<std::size_t>(k)] = jet_node(grid, values, static_cast<std::size_t>(k));
    }
  } else {
    for (long k = 0; k < count; ++k) {
      out[static_cast<std::size_t>(k)] = jet_node(grid, values, static_cast<std::size_t>(k));
    }
  }
}

CovariantJet covariant_jet(const ScalarField& field, Exec exec) {
  CovariantJet jet;
  jet.n = field.grid().dim();
  jet.nodes.resize(field.size());
  covariant_jet(field.grid(), field.values(), jet.nodes, exec);
  return jet;
}

}  // namespace starflow

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "starflow/error.hpp"
#include "starflow/sphere_grid.hpp"

using namespace starflow;
using std::numbers::pi;

TEST_CASE("cell-centred axisymmetric grid") {
  const GridPtr g = build_grid(GridMode::axisymmetric, 3, 64);
  CHECK(g->size() == 64);
  CHECK(g->polar_step() == doctest::Approx(pi / 64).epsilon(1e-15));
  CHECK(g->theta(0) == doctest::Approx(pi / 128));
  CHECK(g->theta(63) == doctest::Approx(pi - pi / 128));
  CHECK(g->min_spacing() == doctest::Approx(pi / 64));
}

TEST_CASE("full2d grid layout") {
  const GridPtr g = build_grid(GridMode::full2d, 2, 32, 64);
  CHECK(g->size() == 32 * 64);
  CHECK(g->index(3, 5) == 3 * 64 + 5);
  CHECK(g->row_of(g->index(7, 9)) == 7);
  CHECK(g->col_of(g->index(7, 9)) == 9);
  CHECK(g->phi(16) == doctest::Approx(pi / 2));
  // the closest pair of nodes sits on the polar rows
  CHECK(g->min_spacing() < g->polar_step());
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(build_grid(GridMode::axisymmetric, 1, 64), DomainError);
  CHECK_THROWS_AS(build_grid(GridMode::axisymmetric, 2, 8), DomainError);
  CHECK_THROWS_AS(build_grid(GridMode::full2d, 3, 32, 64), DomainError);
  CHECK_THROWS_AS(build_grid(GridMode::full2d, 2, 32, 63), DomainError);
  CHECK_THROWS_AS(build_grid(GridMode::full2d, 2, 32, 8), DomainError);
  CHECK_THROWS_AS(grid_mode_from_string("cubed"), ConfigError);
  CHECK(grid_mode_from_string("full2d") == GridMode::full2d);
}

TEST_CASE("scalar field rejects bad input") {
  const GridPtr g = build_grid(GridMode::axisymmetric, 2, 16);
  CHECK_THROWS_AS(ScalarField(g, std::vector<double>(15, 0.0)), DomainError);
  std::vector<double> v(16, 0.0);
  v[3] = NAN;
  CHECK_THROWS_AS(ScalarField(g, v), DomainError);
}

namespace {

struct JetError {
  double grad = 0.0, hess = 0.0;
};

// Max-norm error of the axisymmetric jet of cos(theta) against its analytic jet.
JetError cos_theta_error(int N) {
  const GridPtr g = build_grid(GridMode::axisymmetric, 3, N);
  std::vector<double> v(g->size());
  for (int i = 0; i < N; ++i) v[i] = std::cos(g->theta(i));
  const CovariantJet jet = covariant_jet(ScalarField(g, v));
  JetError e;
  for (int i = 0; i < N; ++i) {
    const double t = g->theta(i);
    const JetSample& s = jet.nodes[i];
    e.grad = std::max(e.grad, std::abs(s.g1 + std::sin(t)));
    e.hess = std::max({e.hess, std::abs(s.h11 + std::cos(t)), std::abs(s.h22 + std::cos(t))});
    CHECK(s.g2 == 0.0);
    CHECK(s.h12 == 0.0);
  }
  return e;
}

}  // namespace

TEST_CASE("axisymmetric jet of cos(theta) converges") {
  const JetError coarse = cos_theta_error(64);
  const JetError fine = cos_theta_error(128);
  CHECK(coarse.grad < 1e-5);
  CHECK(coarse.hess < 1e-5);
  CHECK(coarse.grad / fine.grad >= 3.5);
  CHECK(coarse.hess / fine.hess >= 3.5);
}

TEST_CASE("jet matrices have the documented block form") {
  const GridPtr g = build_grid(GridMode::axisymmetric, 4, 32);
  std::vector<double> v(g->size());
  for (int i = 0; i < 32; ++i) v[i] = 0.1 * std::cos(g->theta(i));
  const CovariantJet jet = covariant_jet(ScalarField(g, v));
  const auto hess = jet.hess_matrix(5);
  const auto grad = jet.grad_vector(5);
  REQUIRE(hess.size() == 16);
  REQUIRE(grad.size() == 4);
  CHECK(grad[0] == jet.nodes[5].g1);
  CHECK(hess[0] == jet.nodes[5].h11);
  for (int d = 1; d < 4; ++d) CHECK(hess[d * 4 + d] == jet.nodes[5].h22);
  CHECK(hess[1] == 0.0);
  CHECK(hess[2 * 4 + 3] == 0.0);
}

namespace {

// Orthonormal frame vectors at (theta, phi).
struct Frame {
  double et[3], ep[3], xi[3];
};

Frame frame(double t, double p) {
  return {{std::cos(t) * std::cos(p), std::cos(t) * std::sin(p), -std::sin(t)},
          {-std::sin(p), std::cos(p), 0.0},
          {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)}};
}

// Restriction of the harmonic quadratic x y + 0.5 x to the sphere. The
// covariant Hessian of a restricted polynomial P is D^2 P(e_a, e_b) minus
// (d/dr P) delta_ab; the gradient is DP tangential.
JetSample exact_jet(double t, double p) {
  const Frame f = frame(t, p);
  const double x = f.xi[0], y = f.xi[1];
  const double grad[3] = {y + 0.5, x, 0.0};
  const double radial = 2.0 * x * y + 0.5 * x;  // Euler: r d/dr of each homogeneous part
  const auto dot = [](const double* a, const double* b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };
  const auto d2 = [](const double* a, const double* b) { return a[0] * b[1] + a[1] * b[0]; };
  JetSample s;
  s.g1 = dot(grad, f.et);
  s.g2 = dot(grad, f.ep);
  s.h11 = d2(f.et, f.et) - radial;
  s.h12 = d2(f.et, f.ep);
  s.h22 = d2(f.ep, f.ep) - radial;
  return s;
}

double full2d_error(int N) {
  const GridPtr g = build_grid(GridMode::full2d, 2, N, 2 * N);
  std::vector<double> v(g->size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Frame f = frame(g->theta(g->row_of(k)), g->phi(g->col_of(k)));
    v[k] = f.xi[0] * f.xi[1] + 0.5 * f.xi[0];
  }
  const CovariantJet jet = covariant_jet(ScalarField(g, v));
  double err = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const JetSample e = exact_jet(g->theta(g->row_of(k)), g->phi(g->col_of(k)));
    const JetSample& s = jet.nodes[k];
    err = std::max({err, std::abs(s.g1 - e.g1), std::abs(s.g2 - e.g2), std::abs(s.h11 - e.h11),
                    std::abs(s.h12 - e.h12), std::abs(s.h22 - e.h22)});
  }
  return err;
}

}  // namespace

TEST_CASE("full2d jet of a restricted polynomial converges, pole rows included") {
  const double coarse = full2d_error(32);
  const double fine = full2d_error(64);
  CHECK(coarse < 1e-2);
  CHECK(coarse / fine >= 3.5);
}

TEST_CASE("serial and parallel jets are bit-identical") {
  const GridPtr g = build_grid(GridMode::full2d, 2, 32, 64);
  std::vector<double> v(g->size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = 0.1 * std::sin(g->theta(g->row_of(k))) * std::cos(3.0 * g->phi(g->col_of(k)));
  }
  const ScalarField f(g, v);
  const CovariantJet a = covariant_jet(f, Exec::serial);
  const CovariantJet b = covariant_jet(f, Exec::parallel);
  for (std::size_t k = 0; k < v.size(); ++k) {
    CHECK(a.nodes[k].g1 == b.nodes[k].g1);
    CHECK(a.nodes[k].h12 == b.nodes[k].h12);
    CHECK(a.nodes[k].h22 == b.nodes[k].h22);
  }
}

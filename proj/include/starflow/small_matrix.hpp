#pragma once

#include <initializer_list>
#include <vector>

namespace starflow {

/// Dense square matrix, row-major. Sized for per-point curvature work (n <= ~8).
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, double fill = 0.0);
  SquareMatrix(int n, std::initializer_list<double> row_major);
  SquareMatrix(int n, std::vector<double> row_major);

  static SquareMatrix identity(int n);

  int dim() const noexcept { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const std::vector<double>& data() const noexcept { return a_; }

  SquareMatrix operator*(const SquareMatrix& rhs) const;
  SquareMatrix operator+(const SquareMatrix& rhs) const;
  SquareMatrix operator-(const SquareMatrix& rhs) const;
  SquareMatrix operator*(double s) const;
  SquareMatrix transposed() const;

  double trace() const;
  double max_abs() const;
  bool is_diagonal() const;
  /// max |a_ij - a_ji| relative to max |a_ij| (0 for the zero matrix).
  double asymmetry() const;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
std::vector<double> jacobi_eigenvalues(const SquareMatrix& m, double tol = 1e-15, int max_sweeps = 64);

/// Eigenpairs of a symmetric matrix by cyclic Jacobi; columns of `vectors` are
/// the eigenvectors, ordered like `values` (descending).
void jacobi_eigensystem(const SquareMatrix& m, std::vector<double>& values, SquareMatrix& vectors,
                        double tol = 1e-15, int max_sweeps = 64);

}  // namespace starflow

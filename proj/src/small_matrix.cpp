#include "starflow/small_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "starflow/error.hpp"

namespace starflow {

SquareMatrix::SquareMatrix(int n, double fill)
    : n_(n), a_(static_cast<std::size_t>(n * n), fill) {}

SquareMatrix::SquareMatrix(int n, std::initializer_list<double> row_major)
    : SquareMatrix(n, std::vector<double>(row_major)) {}

SquareMatrix::SquareMatrix(int n, std::vector<double> row_major) : n_(n), a_(std::move(row_major)) {
  if (a_.size() != static_cast<std::size_t>(n * n)) {
    throw DomainError("SquareMatrix: expected " + std::to_string(n * n) + " entries");
  }
}

SquareMatrix SquareMatrix::identity(int n) {
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& rhs) const {
  SquareMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n_; ++j) out(i, j) += aik * rhs(k, j);
    }
  return out;
}

SquareMatrix SquareMatrix::operator+(const SquareMatrix& rhs) const {
  SquareMatrix out(*this);
  for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] += rhs.a_[k];
  return out;
}

SquareMatrix SquareMatrix::operator-(const SquareMatrix& rhs) const {
  SquareMatrix out(*this);
  for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] -= rhs.a_[k];
  return out;
}

SquareMatrix SquareMatrix::operator*(double s) const {
  SquareMatrix out(*this);
  for (double& v : out.a_) v *= s;
  return out;
}

SquareMatrix SquareMatrix::transposed() const {
  SquareMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

double SquareMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SquareMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool SquareMatrix::is_diagonal() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && (*this)(i, j) != 0.0) return false;
  return true;
}

double SquareMatrix::asymmetry() const {
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst / scale;
}

void jacobi_eigensystem(const SquareMatrix& m, std::vector<double>& values, SquareMatrix& vectors,
                        double tol, int max_sweeps) {
  const int n = m.dim();
  SquareMatrix a = m;
  SquareMatrix v = SquareMatrix::identity(n);
  const double scale = std::max(a.max_abs(), 1e-300);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol * scale) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) > a(y, y); });
  values.resize(static_cast<std::size_t>(n));
  vectors = SquareMatrix(n);
  for (int c = 0; c < n; ++c) {
    const int src = order[static_cast<std::size_t>(c)];
    values[static_cast<std::size_t>(c)] = a(src, src);
    for (int k = 0; k < n; ++k) vectors(k, c) = v(k, src);
  }
}

std::vector<double> jacobi_eigenvalues(const SquareMatrix& m, double tol, int max_sweeps) {
  std::vector<double> values;
  SquareMatrix vectors;
  jacobi_eigensystem(m, values, vectors, tol, max_sweeps);
  return values;
}

}  // namespace starflow

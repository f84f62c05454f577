#pragma once

/**
 * @file linalg.hpp
 * @brief Small dense real linear algebra for the recovery solver.
 *
 * Systems here are at most a few hundred unknowns, so plain row-major storage,
 * Cholesky for the normal equations and a cyclic Jacobi eigensolver for the
 * rank-deficient (minimum-norm) case are enough.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "errors.hpp"

namespace dqup::linalg {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const double> data() const { return data_; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline std::vector<double> multiply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw ShapeMismatch("matrix-vector size mismatch");
  std::vector<double> y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) y[r] = dot(a.row(r), x);
  return y;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeMismatch("matrix product size mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double v = a(r, k);
      if (v == 0.0) continue;
      for (std::size_t col = 0; col < b.cols(); ++col) c(r, col) += v * b(k, col);
    }
  return c;
}

/// AᵀA.
inline Matrix gram(const Matrix& a) {
  Matrix g(a.cols(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto row = a.row(r);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double v = row[i];
      if (v == 0.0) continue;
      for (std::size_t j = i; j < a.cols(); ++j) g(i, j) += v * row[j];
    }
  }
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

/// Aᵀy.
inline std::vector<double> transpose_multiply(const Matrix& a, std::span<const double> y) {
  if (a.rows() != y.size()) throw ShapeMismatch("transpose product size mismatch");
  std::vector<double> out(a.cols(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto row = a.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] += row[c] * y[r];
  }
  return out;
}

/**
 * In-place Cholesky solve of the symmetric system G x = b (G is n×n row-major).
 * Returns false, leaving the buffers in an unspecified state, when a pivot drops
 * below `rel_pivot` times the largest diagonal entry.
 */
inline bool cholesky_solve_inplace(std::span<double> g, std::span<double> b, std::size_t n,
                                   double rel_pivot = 1e-10) {
  double diag_max = 0.0;
  for (std::size_t k = 0; k < n; ++k) diag_max = std::max(diag_max, g[k * n + k]);
  if (diag_max <= 0.0) return n == 0;
  const double floor = rel_pivot * diag_max;
  for (std::size_t j = 0; j < n; ++j) {
    double d = g[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= g[j * n + k] * g[j * n + k];
    if (!(d > floor)) return false;
    const double l = std::sqrt(d);
    g[j * n + j] = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = g[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= g[i * n + k] * g[j * n + k];
      g[i * n + j] = v / l;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= g[i * n + k] * b[k];
    b[i] = v / g[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double v = b[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= g[k * n + i] * b[k];
    b[i] = v / g[i * n + i];
  }
  return true;
}

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix.
inline SymmetricEigen symmetric_eigen(const Matrix& sym, int max_sweeps = 100) {
  if (sym.rows() != sym.cols()) throw ShapeMismatch("eigen decomposition needs a square matrix");
  const std::size_t n = sym.rows();
  Matrix a = sym;
  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += a(i, j) * a(i, j);
        if (i != j) off += a(i, j) * a(i, j);
      }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymmetricEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

struct SolveResult {
  std::vector<double> x;
  bool rank_deficient = false;
};

/**
 * Solves the normal equations G x = b. Falls back to the minimum-norm solution
 * (pseudo-inverse through the eigen-decomposition of G) when Cholesky fails.
 */
inline SolveResult solve_normal_equations(const Matrix& g, std::span<const double> b, double rel_tol = 1e-10) {
  const std::size_t n = g.rows();
  std::vector<double> work(g.data().begin(), g.data().end());
  SolveResult out{std::vector<double>(b.begin(), b.end()), false};
  if (cholesky_solve_inplace(work, out.x, n, rel_tol)) return out;

  out.rank_deficient = true;
  const SymmetricEigen eig = symmetric_eigen(g);
  const double top = eig.values.empty() ? 0.0 : std::max(0.0, eig.values.back());
  std::fill(out.x.begin(), out.x.end(), 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] <= rel_tol * top) continue;
    double coeff = 0.0;
    for (std::size_t r = 0; r < n; ++r) coeff += eig.vectors(r, k) * b[r];
    coeff /= eig.values[k];
    for (std::size_t r = 0; r < n; ++r) out.x[r] += coeff * eig.vectors(r, k);
  }
  return out;
}

/// Orthonormal basis (as columns) of the null space of A, via the eigenvectors of AᵀA.
inline Matrix null_space(const Matrix& a, double rel_tol = 1e-10) {
  const SymmetricEigen eig = symmetric_eigen(gram(a));
  const std::size_t n = a.cols();
  double top = 0.0;
  for (double v : eig.values) top = std::max(top, v);
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < n; ++k)
    if (eig.values[k] <= rel_tol * std::max(top, 1.0)) keep.push_back(k);
  Matrix basis(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) basis(r, c) = eig.vectors(r, keep[c]);
  return basis;
}

/// Spectral norm of A (largest singular value).
inline double spectral_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const SymmetricEigen eig = symmetric_eigen(gram(a));
  return std::sqrt(std::max(0.0, eig.values.back()));
}

}  // namespace dqup::linalg

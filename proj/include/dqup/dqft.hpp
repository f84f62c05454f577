#pragma once

/**
 * @file dqft.hpp
 * @brief Two-sided discrete quaternion Fourier transform.
 *
 * Forward transform of an M×N quaternion signal f:
 *
 *   F(u,v) = 1/√(MN) Σ_t Σ_s  e^{-2πi·ut/M} · f(t,s) · e^{-2πj·vs/N}
 *
 * The i-kernel multiplies from the left and the j-kernel from the right. The
 * inverse flips both exponent signs. The map is real-linear but not
 * quaternion-linear, so the recovery solver works with its 4MN×4MN real matrix.
 *
 * Three evaluation paths exist and are cross-checked by the tests:
 *   - dqft()/idqft(): direct double sum, the reference, O((MN)²);
 *   - dqft_matrix_form(): V_i · A · V_j with explicit Vandermonde matrices;
 *   - TransformPlan::apply(): cached kernels, rows then columns, O(MN(M+N)).
 *
 * Real flattening convention: entry (u,v) occupies slots 4(u·N+v) .. 4(u·N+v)+3
 * in the order (w, x, y, z).
 */

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "linalg.hpp"
#include "qsignal.hpp"
#include "quaternion.hpp"

namespace dqup {

enum class Direction { forward, inverse };

/// e^{±2π·axis·k/n}, negative exponent for the forward direction. The angle is
/// reduced through the exact integer k mod n before cos/sin.
inline Quaternion unit_root(Axis axis, std::size_t k, std::size_t n, Direction dir) {
  const double frac = static_cast<double>(k % n) / static_cast<double>(n);
  const double sign = dir == Direction::forward ? -1.0 : 1.0;
  return exp_unit(axis, sign * 2.0 * std::numbers::pi * frac);
}

class TransformPlan {
 public:
  TransformPlan(std::size_t rows, std::size_t cols, Direction dir = Direction::forward)
      : rows_(rows), cols_(cols), dir_(dir), row_kernel_(rows * rows), col_kernel_(cols * cols) {
    if (rows == 0 || cols == 0) throw InvalidArgument("transform dimensions must be positive");
    for (std::size_t u = 0; u < rows; ++u)
      for (std::size_t t = 0; t < rows; ++t) row_kernel_[u * rows + t] = unit_root(Axis::i, u * t, rows, dir);
    for (std::size_t s = 0; s < cols; ++s)
      for (std::size_t v = 0; v < cols; ++v) col_kernel_[s * cols + v] = unit_root(Axis::j, v * s, cols, dir);
    scale_ = 1.0 / std::sqrt(static_cast<double>(rows * cols));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Direction direction() const { return dir_; }
  double scale() const { return scale_; }

  /// Left kernel value for output row u and input row t.
  const Quaternion& row_kernel(std::size_t u, std::size_t t) const { return row_kernel_[u * rows_ + t]; }
  /// Right kernel value for input column s and output column v.
  const Quaternion& col_kernel(std::size_t s, std::size_t v) const { return col_kernel_[s * cols_ + v]; }

  std::span<const Quaternion> row_kernels() const { return row_kernel_; }
  std::span<const Quaternion> col_kernels() const { return col_kernel_; }

  /// Row-column evaluation. Summation order per entry is fixed.
  QSignal apply(const QSignal& f) const {
    check_shape(f);
    QSignal partial(rows_, cols_);
    for (std::size_t u = 0; u < rows_; ++u)
      for (std::size_t s = 0; s < cols_; ++s) {
        Quaternion acc;
        for (std::size_t t = 0; t < rows_; ++t) acc += row_kernel(u, t) * f(t, s);
        partial(u, s) = acc;
      }
    QSignal out(rows_, cols_);
    for (std::size_t u = 0; u < rows_; ++u)
      for (std::size_t v = 0; v < cols_; ++v) {
        Quaternion acc;
        for (std::size_t s = 0; s < cols_; ++s) acc += partial(u, s) * col_kernel(s, v);
        out(u, v) = acc * scale_;
      }
    return out;
  }

  /// Output entry (u,v) of the transform of a signal that is `value` at (t,s) and zero elsewhere.
  Quaternion impulse_response(std::size_t t, std::size_t s, const Quaternion& value, std::size_t u,
                              std::size_t v) const {
    return row_kernel(u, t) * value * col_kernel(s, v) * scale_;
  }

 private:
  void check_shape(const QSignal& f) const {
    if (f.rows() != rows_ || f.cols() != cols_) throw ShapeMismatch("signal does not match transform plan");
  }

  std::size_t rows_;
  std::size_t cols_;
  Direction dir_;
  std::vector<Quaternion> row_kernel_;
  std::vector<Quaternion> col_kernel_;
  double scale_ = 1.0;
};

namespace detail {
inline QSignal direct_sum(const QSignal& f, Direction dir) {
  const std::size_t m = f.rows(), n = f.cols();
  const double scale = 1.0 / std::sqrt(static_cast<double>(m * n));
  QSignal out(m, n);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      Quaternion acc;
      for (std::size_t t = 0; t < m; ++t) {
        const Quaternion left = unit_root(Axis::i, u * t, m, dir);
        for (std::size_t s = 0; s < n; ++s) acc += left * f(t, s) * unit_root(Axis::j, v * s, n, dir);
      }
      out(u, v) = acc * scale;
    }
  return out;
}
}  // namespace detail

/// Forward transform by the direct double sum.
inline QSignal dqft(const QSignal& f) { return detail::direct_sum(f, Direction::forward); }

/// Inverse transform by the direct double sum.
inline QSignal idqft(const QSignal& g) { return detail::direct_sum(g, Direction::inverse); }

/// (1/√n)·[e^{∓2π·axis·ab/n}]_{a,b}: the Vandermonde matrix V_axis (forward) or V_{-axis} (inverse).
inline QSignal vandermonde(Axis axis, std::size_t n, Direction dir = Direction::forward) {
  QSignal v(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) v(a, b) = unit_root(axis, a * b, n, dir) * scale;
  return v;
}

/// V_i · A · V_j.
inline QSignal dqft_matrix_form(const QSignal& f) {
  return matmul(matmul(vandermonde(Axis::i, f.rows()), f), vandermonde(Axis::j, f.cols()));
}

/// V_{-i} · Â · V_{-j}.
inline QSignal idqft_matrix_form(const QSignal& g) {
  return matmul(matmul(vandermonde(Axis::i, g.rows(), Direction::inverse), g),
                vandermonde(Axis::j, g.cols(), Direction::inverse));
}

/// Flattens a signal to 4·M·N reals, entry-major, (w,x,y,z) per entry.
inline std::vector<double> vectorize(const QSignal& s) {
  std::vector<double> out;
  out.reserve(4 * s.size());
  for (const Quaternion& q : s.data())
    for (std::size_t c = 0; c < 4; ++c) out.push_back(q[c]);
  return out;
}

inline QSignal unvectorize(std::size_t rows, std::size_t cols, std::span<const double> v) {
  if (v.size() != 4 * rows * cols) throw ShapeMismatch("vector length is not 4*rows*cols");
  QSignal out(rows, cols);
  for (std::size_t p = 0; p < rows * cols; ++p)
    out.data()[p] = Quaternion(v[4 * p], v[4 * p + 1], v[4 * p + 2], v[4 * p + 3]);
  return out;
}

/**
 * Column 4(t·N+s)+basis of the real matrix of the plan's transform: the
 * flattened transform of the single basis quaternion placed at (t,s).
 */
inline std::vector<double> real_embedding_column(const TransformPlan& plan, Index at, Basis basis) {
  if (at.row >= plan.rows() || at.col >= plan.cols()) throw OutOfRange("embedding index out of range");
  const Quaternion e = Quaternion::unit(basis);
  std::vector<double> col(4 * plan.rows() * plan.cols());
  for (std::size_t u = 0; u < plan.rows(); ++u)
    for (std::size_t v = 0; v < plan.cols(); ++v) {
      const Quaternion q = plan.impulse_response(at.row, at.col, e, u, v);
      const std::size_t base = 4 * (u * plan.cols() + v);
      for (std::size_t c = 0; c < 4; ++c) col[base + c] = q[c];
    }
  return col;
}

/// The full 4MN×4MN real matrix, assembled from real_embedding_column().
inline linalg::Matrix real_embedding_matrix(const TransformPlan& plan) {
  const std::size_t n = 4 * plan.rows() * plan.cols();
  linalg::Matrix m(n, n);
  for (std::size_t t = 0; t < plan.rows(); ++t)
    for (std::size_t s = 0; s < plan.cols(); ++s)
      for (std::size_t b = 0; b < 4; ++b) {
        const std::size_t c = 4 * (t * plan.cols() + s) + b;
        const auto col = real_embedding_column(plan, {t, s}, static_cast<Basis>(b));
        for (std::size_t r = 0; r < n; ++r) m(r, c) = col[r];
      }
  return m;
}

}  // namespace dqup

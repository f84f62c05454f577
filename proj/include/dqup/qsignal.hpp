#pragma once

/**
 * @file qsignal.hpp
 * @brief Dense M×N quaternion matrices (signals and spectra) and index supports.
 *
 * Storage is row-major; supports iterate in lexicographic (row-major) order.
 * Those two conventions fix enumeration and tie-breaking everywhere else.
 */

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "quaternion.hpp"

namespace dqup {

struct Index {
  std::size_t row = 0;
  std::size_t col = 0;
  constexpr auto operator<=>(const Index&) const = default;
};

class QSignal {
 public:
  QSignal(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw InvalidArgument("signal dimensions must be positive");
  }

  QSignal(std::size_t rows, std::size_t cols, std::vector<Quaternion> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) throw InvalidArgument("signal dimensions must be positive");
    if (data_.size() != rows * cols) throw ShapeMismatch("data length does not match rows*cols");
  }

  /// Single nonzero `value` at (r, c).
  static QSignal delta(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c,
                       const Quaternion& value = Quaternion(1.0)) {
    QSignal s(rows, cols);
    s.at(r, c) = value;
    return s;
  }

  static QSignal constant(std::size_t rows, std::size_t cols, const Quaternion& value) {
    return QSignal(rows, cols, std::vector<Quaternion>(rows * cols, value));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Quaternion& at(std::size_t r, std::size_t c) {
    if (r >= rows_ || c >= cols_) throw OutOfRange("signal index out of range");
    return data_[r * cols_ + c];
  }
  const Quaternion& at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw OutOfRange("signal index out of range");
    return data_[r * cols_ + c];
  }

  std::span<Quaternion> data() { return data_; }
  std::span<const Quaternion> data() const { return data_; }

  bool same_shape(const QSignal& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  bool operator==(const QSignal&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Quaternion> data_;
};

/// A duplicate-free, lexicographically ordered set of grid indices inside an M×N grid.
class Support {
 public:
  Support(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), member_(rows * cols, 0) {
    if (rows == 0 || cols == 0) throw InvalidArgument("support dimensions must be positive");
  }

  Support(std::size_t rows, std::size_t cols, std::initializer_list<Index> entries)
      : Support(rows, cols, std::vector<Index>(entries)) {}

  Support(std::size_t rows, std::size_t cols, const std::vector<Index>& entries) : Support(rows, cols) {
    for (const Index& e : entries) insert(e);
  }

  static Support full(std::size_t rows, std::size_t cols) {
    Support s(rows, cols);
    std::fill(s.member_.begin(), s.member_.end(), 1);
    s.count_ = rows * cols;
    return s;
  }

  /// Support from a row-major bitmask (bit p <-> flat index p).
  static Support from_mask(std::size_t rows, std::size_t cols, unsigned long long mask) {
    Support s(rows, cols);
    for (std::size_t p = 0; p < rows * cols && p < 64; ++p)
      if (mask >> p & 1ULL) s.insert_flat(p);
    return s;
  }

  static Support from_flat(std::size_t rows, std::size_t cols, std::span<const std::size_t> flat) {
    Support s(rows, cols);
    for (std::size_t p : flat) {
      if (p >= rows * cols) throw OutOfRange("support index out of range");
      s.insert_flat(p);
    }
    return s;
  }

  void insert(Index e) {
    if (e.row >= rows_ || e.col >= cols_) throw OutOfRange("support index out of range");
    insert_flat(e.row * cols_ + e.col);
  }

  bool contains(Index e) const {
    return e.row < rows_ && e.col < cols_ && member_[e.row * cols_ + e.col] != 0;
  }
  bool contains_flat(std::size_t p) const { return p < member_.size() && member_[p] != 0; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  /// Entries in lexicographic order.
  std::vector<Index> entries() const {
    std::vector<Index> out;
    out.reserve(count_);
    for (std::size_t p = 0; p < member_.size(); ++p)
      if (member_[p]) out.push_back({p / cols_, p % cols_});
    return out;
  }

  /// Flat row-major positions in increasing order.
  std::vector<std::size_t> flat() const {
    std::vector<std::size_t> out;
    out.reserve(count_);
    for (std::size_t p = 0; p < member_.size(); ++p)
      if (member_[p]) out.push_back(p);
    return out;
  }

  Support complement() const {
    Support c(rows_, cols_);
    for (std::size_t p = 0; p < member_.size(); ++p)
      if (!member_[p]) c.insert_flat(p);
    return c;
  }

  bool operator==(const Support& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && member_ == o.member_;
  }

 private:
  void insert_flat(std::size_t p) {
    if (!member_[p]) {
      member_[p] = 1;
      ++count_;
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<char> member_;
  std::size_t count_ = 0;
};

inline double frobenius_norm(const QSignal& s) {
  // Scaled accumulation, same idea as modulus().
  double scale = 0.0;
  for (const Quaternion& q : s.data())
    for (std::size_t n = 0; n < 4; ++n) scale = std::max(scale, std::abs(q[n]));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const Quaternion& q : s.data())
    for (std::size_t n = 0; n < 4; ++n) {
      const double v = q[n] / scale;
      sum += v * v;
    }
  return scale * std::sqrt(sum);
}

/// Nonzero threshold used when the caller does not pass one: 1e-9·max(1, ‖s‖).
inline double default_tolerance(const QSignal& s) { return 1e-9 * std::max(1.0, frobenius_norm(s)); }

inline std::size_t count_nonzero(const QSignal& s, double tol) {
  if (tol < 0.0) throw InvalidArgument("tolerance must be nonnegative");
  return static_cast<std::size_t>(
      std::count_if(s.data().begin(), s.data().end(), [tol](const Quaternion& q) { return modulus(q) > tol; }));
}
inline std::size_t count_nonzero(const QSignal& s) { return count_nonzero(s, default_tolerance(s)); }

inline Support support_of(const QSignal& s, double tol) {
  if (tol < 0.0) throw InvalidArgument("tolerance must be nonnegative");
  Support out(s.rows(), s.cols());
  for (std::size_t r = 0; r < s.rows(); ++r)
    for (std::size_t c = 0; c < s.cols(); ++c)
      if (modulus(s(r, c)) > tol) out.insert({r, c});
  return out;
}
inline Support support_of(const QSignal& s) { return support_of(s, default_tolerance(s)); }

namespace detail {
inline std::size_t wrap(long long v, std::size_t n) {
  const long long m = static_cast<long long>(n);
  return static_cast<std::size_t>(((v % m) + m) % m);
}
}  // namespace detail

/**
 * m×n window of the periodic extension of `s` anchored at (top, left):
 * entry (a, b) = s((top + a) mod M, (left + b) mod N).
 *
 * Anchors may be any integers; they are reduced modulo the grid size.
 */
inline QSignal consecutive_submatrix(const QSignal& s, long long top, long long left, std::size_t m,
                                     std::size_t n) {
  if (m == 0 || n == 0 || m > s.rows() || n > s.cols())
    throw OutOfRange("window " + std::to_string(m) + "x" + std::to_string(n) + " does not fit in " +
                     std::to_string(s.rows()) + "x" + std::to_string(s.cols()));
  const std::size_t r0 = detail::wrap(top, s.rows());
  const std::size_t c0 = detail::wrap(left, s.cols());
  QSignal w(m, n);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < n; ++b) w(a, b) = s((r0 + a) % s.rows(), (c0 + b) % s.cols());
  return w;
}

inline QSignal operator+(const QSignal& a, const QSignal& b) {
  if (!a.same_shape(b)) throw ShapeMismatch();
  QSignal out(a.rows(), a.cols());
  for (std::size_t p = 0; p < a.size(); ++p) out.data()[p] = a.data()[p] + b.data()[p];
  return out;
}

inline QSignal operator-(const QSignal& a, const QSignal& b) {
  if (!a.same_shape(b)) throw ShapeMismatch();
  QSignal out(a.rows(), a.cols());
  for (std::size_t p = 0; p < a.size(); ++p) out.data()[p] = a.data()[p] - b.data()[p];
  return out;
}

inline QSignal operator*(const QSignal& a, double k) {
  QSignal out(a.rows(), a.cols());
  for (std::size_t p = 0; p < a.size(); ++p) out.data()[p] = a.data()[p] * k;
  return out;
}
inline QSignal operator*(double k, const QSignal& a) { return a * k; }

inline QSignal scale(const QSignal& a, double k) { return a * k; }

inline double distance(const QSignal& a, const QSignal& b) {
  if (!a.same_shape(b)) throw ShapeMismatch();
  return frobenius_norm(a - b);
}

/// Largest entrywise modulus of a - b.
inline double max_abs_difference(const QSignal& a, const QSignal& b) {
  if (!a.same_shape(b)) throw ShapeMismatch();
  double m = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) m = std::max(m, modulus(a.data()[p] - b.data()[p]));
  return m;
}

/// Time-limiting projection: zeroes every entry outside `supp`.
inline QSignal restrict_to(const QSignal& s, const Support& supp) {
  if (s.rows() != supp.rows() || s.cols() != supp.cols()) throw ShapeMismatch("support grid differs from signal");
  QSignal out(s.rows(), s.cols());
  for (std::size_t p = 0; p < s.size(); ++p)
    if (supp.contains_flat(p)) out.data()[p] = s.data()[p];
  return out;
}

/// Quaternion matrix product (order matters).
inline QSignal matmul(const QSignal& a, const QSignal& b) {
  if (a.cols() != b.rows()) throw ShapeMismatch("inner dimensions differ");
  QSignal out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      Quaternion acc;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(r, k) * b(k, c);
      out(r, c) = acc;
    }
  return out;
}

}  // namespace dqup

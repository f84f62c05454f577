#pragma once

/**
 * @file quaternion.hpp
 * @brief Real quaternions q = w + xi + yj + zk over 64-bit floats.
 *
 * Hamilton rules: i² = j² = k² = -1, ij = -ji = k, jk = -kj = i, ki = -ik = j.
 * Multiplication is associative but NOT commutative, so every transform in
 * this library keeps the kernel order explicit.
 *
 * Every value is finite: the public constructor rejects NaN/Inf and every
 * arithmetic result is checked, so overflow surfaces as dqup::Overflow.
 */

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace dqup {

enum class Axis { i, j };

/// Basis element of the quaternion algebra, used to index real coordinates.
enum class Basis { one = 0, i = 1, j = 2, k = 3 };

class Quaternion {
 public:
  constexpr Quaternion() = default;

  Quaternion(double w, double x = 0.0, double y = 0.0, double z = 0.0)
      : w_(w), x_(x), y_(y), z_(z) {
    if (!all_finite()) throw NonFiniteValue();
  }

  static Quaternion unit(Basis b) {
    switch (b) {
      case Basis::one: return {1.0};
      case Basis::i: return {0.0, 1.0};
      case Basis::j: return {0.0, 0.0, 1.0};
      case Basis::k: return {0.0, 0.0, 0.0, 1.0};
    }
    return {};
  }

  constexpr double w() const { return w_; }
  constexpr double x() const { return x_; }
  constexpr double y() const { return y_; }
  constexpr double z() const { return z_; }

  /// Component by basis index (0 = real part).
  constexpr double operator[](std::size_t n) const {
    return n == 0 ? w_ : n == 1 ? x_ : n == 2 ? y_ : z_;
  }

  constexpr bool is_zero() const { return w_ == 0.0 && x_ == 0.0 && y_ == 0.0 && z_ == 0.0; }

  constexpr bool operator==(const Quaternion&) const = default;

  friend Quaternion operator+(const Quaternion& p, const Quaternion& q) {
    return checked(p.w_ + q.w_, p.x_ + q.x_, p.y_ + q.y_, p.z_ + q.z_, "add");
  }
  friend Quaternion operator-(const Quaternion& p, const Quaternion& q) {
    return checked(p.w_ - q.w_, p.x_ - q.x_, p.y_ - q.y_, p.z_ - q.z_, "sub");
  }
  friend Quaternion operator-(const Quaternion& q) { return raw(-q.w_, -q.x_, -q.y_, -q.z_); }

  // Hamilton product.
  friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return checked(p.w_ * q.w_ - p.x_ * q.x_ - p.y_ * q.y_ - p.z_ * q.z_,
                   p.w_ * q.x_ + p.x_ * q.w_ + p.y_ * q.z_ - p.z_ * q.y_,
                   p.w_ * q.y_ - p.x_ * q.z_ + p.y_ * q.w_ + p.z_ * q.x_,
                   p.w_ * q.z_ + p.x_ * q.y_ - p.y_ * q.x_ + p.z_ * q.w_, "mul");
  }
  friend Quaternion operator*(const Quaternion& q, double a) {
    return checked(q.w_ * a, q.x_ * a, q.y_ * a, q.z_ * a, "scale");
  }
  friend Quaternion operator*(double a, const Quaternion& q) { return q * a; }
  friend Quaternion operator/(const Quaternion& q, double a) {
    if (a == 0.0) throw DivisionByZero();
    return checked(q.w_ / a, q.x_ / a, q.y_ / a, q.z_ / a, "scale");
  }

  Quaternion& operator+=(const Quaternion& q) { return *this = *this + q; }
  Quaternion& operator-=(const Quaternion& q) { return *this = *this - q; }
  Quaternion& operator*=(const Quaternion& q) { return *this = *this * q; }
  Quaternion& operator*=(double a) { return *this = *this * a; }

 private:
  static Quaternion raw(double w, double x, double y, double z) {
    Quaternion q;
    q.w_ = w;
    q.x_ = x;
    q.y_ = y;
    q.z_ = z;
    return q;
  }
  static Quaternion checked(double w, double x, double y, double z, const char* op) {
    Quaternion q = raw(w, x, y, z);
    if (!q.all_finite()) throw Overflow(op);
    return q;
  }
  bool all_finite() const {
    return std::isfinite(w_) && std::isfinite(x_) && std::isfinite(y_) && std::isfinite(z_);
  }

  double w_ = 0.0;
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

inline Quaternion mul(const Quaternion& p, const Quaternion& q) { return p * q; }
inline Quaternion add(const Quaternion& p, const Quaternion& q) { return p + q; }
inline Quaternion sub(const Quaternion& p, const Quaternion& q) { return p - q; }
inline Quaternion scale(const Quaternion& q, double a) { return q * a; }

inline Quaternion conj(const Quaternion& q) {
  return Quaternion(q.w(), -q.x(), -q.y(), -q.z());
}

/// Squared modulus w² + x² + y² + z² (may overflow to +inf for huge components).
inline double norm2(const Quaternion& q) {
  return q.w() * q.w() + q.x() * q.x() + q.y() * q.y() + q.z() * q.z();
}

/// |q|, computed with scaling so that large finite components never overflow.
inline double modulus(const Quaternion& q) {
  const double m = std::max({std::abs(q.w()), std::abs(q.x()), std::abs(q.y()), std::abs(q.z())});
  if (m == 0.0) return 0.0;
  const double a = q.w() / m, b = q.x() / m, c = q.y() / m, d = q.z() / m;
  return m * std::sqrt(a * a + b * b + c * c + d * d);
}

inline Quaternion inverse(const Quaternion& q) {
  if (q.is_zero()) throw DivisionByZero();
  const double m = modulus(q);
  // conj(q) / |q|², split in two divisions to stay in range.
  return (conj(q) / m) / m;
}

/// cos(angle) + axis·sin(angle).
inline Quaternion exp_unit(Axis axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return axis == Axis::i ? Quaternion(c, s, 0.0, 0.0) : Quaternion(c, 0.0, s, 0.0);
}

/// Text form "w+xi+yj+zk" with 17 significant digits (exact round trip).
inline std::string to_string(const Quaternion& q) {
  char buf[128];
  auto part = [](double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", std::abs(v));
    return std::string(std::signbit(v) ? "-" : "+") + b;
  };
  std::snprintf(buf, sizeof buf, "%.17g", q.w());
  return std::string(buf) + part(q.x()) + "i" + part(q.y()) + "j" + part(q.z()) + "k";
}

/// Parses the form written by to_string(); whitespace is not allowed.
inline Quaternion parse_quaternion(std::string_view text) {
  const char* p = text.data();
  const char* end = text.data() + text.size();
  auto number = [&](double& out) {
    if (p < end && *p == '+') ++p;  // from_chars rejects a leading '+'
    auto [ptr, ec] = std::from_chars(p, end, out);
    if (ec != std::errc() || ptr == p) throw MalformedFile("bad quaternion text: " + std::string(text));
    p = ptr;
  };
  double c[4];
  number(c[0]);
  const char units[3] = {'i', 'j', 'k'};
  for (int n = 0; n < 3; ++n) {
    if (p >= end || (*p != '+' && *p != '-')) throw MalformedFile("bad quaternion text: " + std::string(text));
    number(c[n + 1]);
    if (p >= end || *p != units[n]) throw MalformedFile("bad quaternion text: " + std::string(text));
    ++p;
  }
  if (p != end) throw MalformedFile("trailing characters in quaternion text: " + std::string(text));
  return Quaternion(c[0], c[1], c[2], c[3]);
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) { return os << to_string(q); }

}  // namespace dqup

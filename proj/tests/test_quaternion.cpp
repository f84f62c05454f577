#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "dqup/quaternion.hpp"
#include "dqup/random.hpp"

using dqup::Axis;
using dqup::Basis;
using dqup::Quaternion;

namespace {

const Quaternion I = Quaternion::unit(Basis::i);
const Quaternion J = Quaternion::unit(Basis::j);
const Quaternion K = Quaternion::unit(Basis::k);

void expect_near(const Quaternion& a, const Quaternion& b, double tol) {
  for (std::size_t n = 0; n < 4; ++n) EXPECT_NEAR(a[n], b[n], tol) << a << " vs " << b;
}

}  // namespace

TEST(Quaternion, HamiltonUnits) {
  EXPECT_EQ(I * J, K);
  EXPECT_EQ(J * K, I);
  EXPECT_EQ(K * I, J);
  EXPECT_EQ(J * I, -K);
  EXPECT_EQ(I * I, Quaternion(-1.0));
  EXPECT_EQ(J * J, Quaternion(-1.0));
  EXPECT_EQ(K * K, Quaternion(-1.0));
  EXPECT_EQ(I * J * K, Quaternion(-1.0));
}

TEST(Quaternion, MulExamples) {
  const Quaternion q(1, 2, 3, 4);
  EXPECT_EQ(mul(q, Quaternion(1.0)), q);
  // (1+i)(1+j) = 1 + j + i + ij
  EXPECT_EQ(mul(Quaternion(1, 1, 0, 0), Quaternion(1, 0, 1, 0)), Quaternion(1, 1, 1, 1));
  EXPECT_EQ(mul(I, J), -mul(J, I));
}

TEST(Quaternion, MulMatchesVectorForm) {
  // pq = p0 q0 - p.q + p0 q + q0 p + p x q
  dqup::Rng rng(5);
  for (int n = 0; n < 200; ++n) {
    const Quaternion p = dqup::random_quaternion(rng, -5, 5), q = dqup::random_quaternion(rng, -5, 5);
    const double dot = p.x() * q.x() + p.y() * q.y() + p.z() * q.z();
    const double cx = p.y() * q.z() - p.z() * q.y();
    const double cy = p.z() * q.x() - p.x() * q.z();
    const double cz = p.x() * q.y() - p.y() * q.x();
    const Quaternion want(p.w() * q.w() - dot, p.w() * q.x() + q.w() * p.x() + cx, p.w() * q.y() + q.w() * p.y() + cy,
                          p.w() * q.z() + q.w() * p.z() + cz);
    expect_near(p * q, want, 1e-12);
  }
}

TEST(Quaternion, Conjugate) {
  EXPECT_EQ(conj(Quaternion(1, 2, 3, 4)), Quaternion(1, -2, -3, -4));
  EXPECT_EQ(conj(Quaternion(5.0)), Quaternion(5.0));
  dqup::Rng rng(1);
  for (int n = 0; n < 50; ++n) {
    const Quaternion q = dqup::random_quaternion(rng);
    EXPECT_EQ(conj(conj(q)), q);
  }
}

TEST(Quaternion, Modulus) {
  EXPECT_DOUBLE_EQ(modulus(Quaternion(1, 2, 3, 4)), std::sqrt(1.0 + 4.0 + 9.0 + 16.0));
  EXPECT_EQ(modulus(Quaternion()), 0.0);
  EXPECT_EQ(modulus(I), 1.0);
  // no overflow for large components
  EXPECT_DOUBLE_EQ(modulus(Quaternion(3e200, 4e200, 0, 0)), 5e200);
}

TEST(Quaternion, NormFromConjugateProduct) {
  dqup::Rng rng(2);
  for (int n = 0; n < 100; ++n) {
    const Quaternion q = dqup::random_quaternion(rng, -10, 10);
    const Quaternion qq = q * conj(q);
    EXPECT_NEAR(qq.w(), norm2(q), 4 * std::numeric_limits<double>::epsilon() * norm2(q));
    const double ulp = 4 * std::numeric_limits<double>::epsilon() * norm2(q);
    EXPECT_LE(std::abs(qq.x()), ulp);
    EXPECT_LE(std::abs(qq.y()), ulp);
    EXPECT_LE(std::abs(qq.z()), ulp);
  }
}

TEST(Quaternion, ExpUnit) {
  expect_near(exp_unit(Axis::i, std::numbers::pi), Quaternion(-1.0), 1e-15);
  EXPECT_EQ(exp_unit(Axis::j, 0.0), Quaternion(1.0));
  expect_near(exp_unit(Axis::j, -2 * std::numbers::pi / 3), Quaternion(-0.5, 0, -std::sqrt(3.0) / 2, 0), 1e-15);
  for (int n = -20; n < 20; ++n) {
    const double m = modulus(exp_unit(Axis::i, 0.37 * n));
    EXPECT_LE(std::abs(m - 1.0), 4 * std::numeric_limits<double>::epsilon());
  }
}

TEST(Quaternion, AddSubScaleInverse) {
  const Quaternion q(1, -2, 3, -4);
  EXPECT_EQ(add(q, Quaternion()), q);
  EXPECT_EQ(sub(q, q), Quaternion());
  EXPECT_EQ(scale(q, 2.0), Quaternion(2, -4, 6, -8));
  EXPECT_EQ(inverse(I), -I);
  EXPECT_EQ(inverse(Quaternion(2.0)), Quaternion(0.5));
  EXPECT_THROW(inverse(Quaternion()), dqup::DivisionByZero);
}

TEST(Quaternion, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(Quaternion(nan, 0, 0, 0), dqup::NonFiniteValue);
  EXPECT_THROW(Quaternion(0, 0, inf, 0), dqup::NonFiniteValue);
  const Quaternion big(1e308, 1e308, 0, 0);
  EXPECT_THROW(big + big, dqup::Overflow);
  EXPECT_THROW(big * big, dqup::Overflow);
  EXPECT_THROW(big * 10.0, dqup::Overflow);
}

TEST(Quaternion, Properties) {
  dqup::Rng rng(3);
  std::uniform_real_distribution<double> mag(0.0, 1e3);
  for (int n = 0; n < 500; ++n) {
    const Quaternion p = dqup::random_nonzero_quaternion(rng) * mag(rng);
    const Quaternion q = dqup::random_nonzero_quaternion(rng) * mag(rng);
    const Quaternion r = dqup::random_quaternion(rng);
    const double mp = modulus(p), mq = modulus(q);
    EXPECT_LE(std::abs(modulus(p * q) - mp * mq), 1e-10 * mp * mq);
    const Quaternion left = (p * q) * r, right = p * (q * r);
    const double scale = std::max(1.0, modulus(left));
    for (std::size_t c = 0; c < 4; ++c) EXPECT_LE(std::abs(left[c] - right[c]), 1e-10 * scale);
    if (mq > 0) expect_near(q * inverse(q), Quaternion(1.0), 1e-10);
  }
}

TEST(Quaternion, TextRoundTrip) {
  dqup::Rng rng(4);
  for (int n = 0; n < 100; ++n) {
    const Quaternion q = dqup::random_quaternion(rng, -1e6, 1e6) * 1e-3;
    EXPECT_EQ(dqup::parse_quaternion(dqup::to_string(q)), q);
  }
  EXPECT_EQ(dqup::to_string(Quaternion(1, -2, 0, 0.5)), "1-2i+0j+0.5k");
  EXPECT_EQ(dqup::parse_quaternion("-1e-3+2i-0j+4k"), Quaternion(-1e-3, 2, 0, 4));
  EXPECT_THROW(dqup::parse_quaternion("1+2i"), dqup::MalformedFile);
  EXPECT_THROW(dqup::parse_quaternion("1+2i+3j+4kx"), dqup::MalformedFile);
  EXPECT_THROW(dqup::parse_quaternion(""), dqup::MalformedFile);
}

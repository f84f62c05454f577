#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "dqup/metrics.hpp"
#include "dqup/random.hpp"

using dqup::QSignal;
using dqup::Quaternion;

namespace {

QSignal random_pure(std::size_t m, std::size_t n, dqup::Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  QSignal s(m, n);
  for (auto& q : s.data()) q = Quaternion(0.0, u(rng), u(rng), u(rng));
  return s;
}

QSignal add_noise(const QSignal& s, double sigma, std::uint64_t seed) {
  dqup::Rng rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  QSignal out = s;
  for (auto& q : out.data()) q = q + Quaternion(0.0, sigma * g(rng), sigma * g(rng), sigma * g(rng));
  return out;
}

}  // namespace

TEST(Metrics, PsnrExamples) {
  dqup::Rng rng(1);
  const QSignal a = random_pure(8, 8, rng);
  EXPECT_EQ(dqup::psnr(a, a), std::numeric_limits<double>::infinity());

  // zero vs. peak on the i channel only: mse = 1/3 over three channels
  const QSignal zero(8, 8);
  const QSignal red = QSignal::constant(8, 8, Quaternion(0, 1, 0, 0));
  EXPECT_NEAR(dqup::psnr(zero, red, 1.0), 10.0 * std::log10(3.0), 1e-12);
  EXPECT_EQ(dqup::quality(zero, red).channels, 3u);

  const QSignal b = add_noise(a, 0.05, 2);
  EXPECT_NEAR(dqup::psnr(a, b, 2.0) - dqup::psnr(a, b, 1.0), 20.0 * std::log10(2.0), 1e-12);
  EXPECT_NEAR(20.0 * std::log10(2.0), 6.0206, 1e-4);
}

TEST(Metrics, MseUsesFourChannelsForGeneralSignals) {
  const QSignal zero(2, 2);
  const QSignal one = QSignal::constant(2, 2, Quaternion(1.0));
  EXPECT_DOUBLE_EQ(dqup::mse(zero, one), 0.25);
  EXPECT_EQ(dqup::quality(QSignal(8, 8), QSignal::constant(8, 8, Quaternion(1.0))).channels, 4u);
}

TEST(Metrics, Errors) {
  EXPECT_THROW(dqup::psnr(QSignal(2, 2), QSignal(2, 3)), dqup::ShapeMismatch);
  EXPECT_THROW(dqup::psnr(QSignal(2, 2), QSignal(2, 2), 0.0), dqup::InvalidArgument);
  EXPECT_THROW(dqup::ssim(QSignal(7, 9), QSignal(7, 9)), dqup::TooSmall);
  EXPECT_THROW(dqup::ssim(QSignal(8, 8), QSignal(8, 9)), dqup::ShapeMismatch);
}

TEST(Metrics, SsimExamples) {
  dqup::Rng rng(3);
  const QSignal a = random_pure(12, 10, rng);
  EXPECT_NEAR(dqup::ssim(a, a), 1.0, 1e-12);

  // Constant images: only the luminance term remains,
  // (2·μa·μb + C1) / (μa² + μb² + C1) with μa = 0.2, μb = 0.7.
  const QSignal c1 = QSignal::constant(8, 8, Quaternion(0, 0.2, 0.2, 0.2));
  const QSignal c2 = QSignal::constant(8, 8, Quaternion(0, 0.7, 0.7, 0.7));
  const double k1 = 1e-4;
  const double want = (2 * 0.2 * 0.7 + k1) / (0.04 + 0.49 + k1);
  EXPECT_NEAR(dqup::ssim(c1, c2), want, 1e-12);
  EXPECT_LT(dqup::ssim(c1, c2), 1.0);

  // ± checkerboards around the same mean are anti-correlated.
  QSignal p(8, 8), q(8, 8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) {
      const double d = ((r + c) % 2 == 0) ? 0.25 : -0.25;
      p(r, c) = Quaternion(0, 0.5 + d, 0.5 + d, 0.5 + d);
      q(r, c) = Quaternion(0, 0.5 - d, 0.5 - d, 0.5 - d);
    }
  EXPECT_LT(dqup::ssim(p, q), 0.0);
}

TEST(Metrics, SsimMatchesDirectFormulaOnOneWindow) {
  dqup::Rng rng(4);
  const QSignal a = random_pure(8, 8, rng), b = random_pure(8, 8, rng);
  double total = 0.0;
  for (std::size_t ch = 1; ch < 4; ++ch) {
    double ma = 0, mb = 0;
    for (std::size_t p = 0; p < 64; ++p) {
      ma += a.data()[p][ch] / 64.0;
      mb += b.data()[p][ch] / 64.0;
    }
    double va = 0, vb = 0, cov = 0;
    for (std::size_t p = 0; p < 64; ++p) {
      const double x = a.data()[p][ch] - ma, y = b.data()[p][ch] - mb;
      va += x * x / 63.0;
      vb += y * y / 63.0;
      cov += x * y / 63.0;
    }
    total += (2 * ma * mb + 1e-4) * (2 * cov + 9e-4) / ((ma * ma + mb * mb + 1e-4) * (va + vb + 9e-4));
  }
  EXPECT_NEAR(dqup::ssim(a, b), total / 3.0, 1e-12);
}

TEST(Metrics, Properties) {
  dqup::Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const QSignal a = random_pure(10, 9, rng), b = random_pure(10, 9, rng);
    EXPECT_DOUBLE_EQ(dqup::psnr(a, b), dqup::psnr(b, a));
    EXPECT_NEAR(dqup::ssim(a, b), dqup::ssim(b, a), 1e-12);
    EXPECT_LE(dqup::ssim(a, b), 1.0);
    EXPECT_LT(dqup::ssim(a, b), 1.0 - 1e-6);
  }
  const QSignal a = random_pure(16, 16, rng);
  double prev = std::numeric_limits<double>::infinity();
  for (double sigma : {0.01, 0.02, 0.05, 0.1, 0.2}) {
    const double p = dqup::psnr(a, add_noise(a, sigma, 9));
    EXPECT_LT(p, prev);
    prev = p;
  }
}

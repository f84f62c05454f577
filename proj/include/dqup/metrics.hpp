#pragma once

/**
 * @file metrics.hpp
 * @brief PSNR and SSIM for quaternion-encoded images.
 *
 * A color image is a pure quaternion signal (R, G, B on i, j, k). When both
 * inputs have a vanishing real part only the three imaginary channels are
 * scored; otherwise all four are.
 *
 * PSNR = 10·log10(peak² / MSE), MSE averaged over channels·M·N samples.
 * SSIM uses an 8×8 uniform window, stride 1, C1 = (0.01·peak)², C2 = (0.03·peak)²,
 * sample (n-1) covariances, mean over windows, then over channels.
 */

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "qsignal.hpp"

namespace dqup {

inline constexpr std::size_t kSsimWindow = 8;

struct QualityReport {
  double psnr = 0.0;  ///< +infinity when the inputs are identical
  double ssim = 0.0;
  double mse = 0.0;
  std::size_t channels = 0;
};

namespace detail {

/// First scored channel: 1 for pure-quaternion pairs, 0 otherwise.
inline std::size_t first_channel(const QSignal& a, const QSignal& b, double tol = 1e-9) {
  for (std::size_t p = 0; p < a.size(); ++p)
    if (std::abs(a.data()[p].w()) > tol || std::abs(b.data()[p].w()) > tol) return 0;
  return 1;
}

inline void check_pair(const QSignal& a, const QSignal& b, double peak) {
  if (!a.same_shape(b)) throw ShapeMismatch("images differ in shape");
  if (!(peak > 0.0)) throw InvalidArgument("peak must be positive");
}

inline double channel_ssim(const QSignal& a, const QSignal& b, std::size_t ch, double c1, double c2) {
  const std::size_t rows = a.rows(), cols = a.cols();
  const double n = static_cast<double>(kSsimWindow * kSsimWindow);
  double total = 0.0;
  std::size_t windows = 0;
  for (std::size_t top = 0; top + kSsimWindow <= rows; ++top)
    for (std::size_t left = 0; left + kSsimWindow <= cols; ++left) {
      double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
      for (std::size_t r = top; r < top + kSsimWindow; ++r)
        for (std::size_t c = left; c < left + kSsimWindow; ++c) {
          const double x = a(r, c)[ch], y = b(r, c)[ch];
          sa += x;
          sb += y;
          saa += x * x;
          sbb += y * y;
          sab += x * y;
        }
      const double ma = sa / n, mb = sb / n;
      const double va = (saa - n * ma * ma) / (n - 1.0);
      const double vb = (sbb - n * mb * mb) / (n - 1.0);
      const double cov = (sab - n * ma * mb) / (n - 1.0);
      total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++windows;
    }
  return total / static_cast<double>(windows);
}

}  // namespace detail

inline double mse(const QSignal& a, const QSignal& b) {
  if (!a.same_shape(b)) throw ShapeMismatch("images differ in shape");
  const std::size_t first = detail::first_channel(a, b);
  double sum = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t ch = first; ch < 4; ++ch) {
      const double d = a.data()[p][ch] - b.data()[p][ch];
      sum += d * d;
    }
  return sum / static_cast<double>((4 - first) * a.size());
}

inline double psnr(const QSignal& a, const QSignal& b, double peak = 1.0) {
  detail::check_pair(a, b, peak);
  const double e = mse(a, b);
  if (e == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / e);
}

inline double ssim(const QSignal& a, const QSignal& b, double peak = 1.0) {
  detail::check_pair(a, b, peak);
  if (std::min(a.rows(), a.cols()) < kSsimWindow) throw TooSmall("SSIM needs images of at least 8x8");
  const double c1 = (0.01 * peak) * (0.01 * peak);
  const double c2 = (0.03 * peak) * (0.03 * peak);
  const std::size_t first = detail::first_channel(a, b);
  double total = 0.0;
  for (std::size_t ch = first; ch < 4; ++ch) total += detail::channel_ssim(a, b, ch, c1, c2);
  return total / static_cast<double>(4 - first);
}

inline QualityReport quality(const QSignal& a, const QSignal& b, double peak = 1.0) {
  QualityReport r;
  r.mse = mse(a, b);
  r.psnr = psnr(a, b, peak);
  r.ssim = ssim(a, b, peak);
  r.channels = 4 - detail::first_channel(a, b);
  return r;
}

}  // namespace dqup

#pragma once

// Band-limit a color image in the quaternion frequency domain, reconstruct it,
// and report support counts next to PSNR/SSIM.

#include <cstddef>

#include "dqft.hpp"
#include "image.hpp"
#include "metrics.hpp"
#include "qsignal.hpp"
#include "uncertainty.hpp"

namespace dqup {

struct ImageExperimentReport {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t band_size = 0;
  /// n_time counts the reconstruction, n_freq its band-limited spectrum.
  UncertaintyReport uncertainty;
  QualityReport quality;
  /// Quantized reconstruction equals the input image byte for byte.
  bool lossless = false;
  bool real_part_discarded = false;
  ColorImage reconstruction;
};

inline ImageExperimentReport image_band_experiment(const ColorImage& img, const Support& band) {
  const QSignal f = image_to_qsignal(img);
  if (band.rows() != f.rows() || band.cols() != f.cols()) throw ShapeMismatch("band grid differs from image");
  const TransformPlan fwd(f.rows(), f.cols(), Direction::forward);
  const TransformPlan inv(f.rows(), f.cols(), Direction::inverse);
  const QSignal limited = restrict_to(fwd.apply(f), band);
  const QSignal recon = inv.apply(limited);

  ImageExperimentReport rep;
  rep.rows = f.rows();
  rep.cols = f.cols();
  rep.band_size = band.size();
  const double tol = default_tolerance(recon);
  rep.uncertainty = make_report(f.rows(), f.cols(), count_nonzero(recon, tol), count_nonzero(limited, tol), tol);
  rep.quality = quality(f, recon, 1.0);
  ImageConversion back = qsignal_to_image(recon);
  rep.real_part_discarded = back.real_part_discarded;
  rep.lossless = back.image == img;
  rep.reconstruction = std::move(back.image);
  return rep;
}

}  // namespace dqup

#pragma once

// Seeded generators for quaternion test signals and planted instances.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include "qsignal.hpp"
#include "quaternion.hpp"

namespace dqup {

using Rng = std::mt19937_64;

/// Components uniform in [lo, hi].
inline Quaternion random_quaternion(Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  const double w = d(rng), x = d(rng), y = d(rng), z = d(rng);
  return Quaternion(w, x, y, z);
}

/// Components uniform in [-1, 1], resampled until the modulus is at least `min_modulus`,
/// so sampled entries never sit near a nonzero-counting threshold.
inline Quaternion random_nonzero_quaternion(Rng& rng, double min_modulus = 0.1) {
  for (;;) {
    Quaternion q = random_quaternion(rng);
    if (modulus(q) >= min_modulus) return q;
  }
}

inline QSignal random_signal(std::size_t rows, std::size_t cols, Rng& rng) {
  QSignal s(rows, cols);
  for (Quaternion& q : s.data()) q = random_quaternion(rng);
  return s;
}

/// Random nonzero entries on exactly the given support.
inline QSignal random_signal_on(const Support& supp, Rng& rng) {
  QSignal s(supp.rows(), supp.cols());
  for (std::size_t p : supp.flat()) s.data()[p] = random_nonzero_quaternion(rng);
  return s;
}

/// Uniformly random subset of `count` grid positions.
inline Support random_support(std::size_t rows, std::size_t cols, std::size_t count, Rng& rng) {
  if (count > rows * cols) throw InvalidArgument("support larger than the grid");
  std::vector<std::size_t> idx(rows * cols);
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates with explicit draws so the result only depends on the engine.
  for (std::size_t k = 0; k < count; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, idx.size() - 1);
    std::swap(idx[k], idx[pick(rng)]);
  }
  idx.resize(count);
  return Support::from_flat(rows, cols, idx);
}

/// Planted sparse signal: `sparsity` random positions with robustly nonzero entries.
inline QSignal random_sparse_signal(std::size_t rows, std::size_t cols, std::size_t sparsity, Rng& rng) {
  return random_signal_on(random_support(rows, cols, sparsity, rng), rng);
}

}  // namespace dqup

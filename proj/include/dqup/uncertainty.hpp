#pragma once

/**
 * @file uncertainty.hpp
 * @brief Support-product audits for the two-sided transform.
 *
 * For a nonzero M×N quaternion signal with n_time nonzero samples and
 * n_freq nonzero transform coefficients,
 *
 *   n_time · n_freq ≥ M·N     and hence     n_time + n_freq ≥ 2√(MN).
 *
 * Everything here checks or exercises that bound numerically: single-signal
 * audits, exhaustive sweeps over every support of a small grid, empirical
 * minimum spectral support per time support, and the periodic-window lemmas
 * behind the bound.
 */

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "dqft.hpp"
#include "linalg.hpp"
#include "qsignal.hpp"
#include "random.hpp"

namespace dqup {

struct UncertaintyReport {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t n_time = 0;
  std::size_t n_freq = 0;
  std::size_t product = 0;
  std::size_t sum = 0;
  bool product_bound_holds = false;
  bool sum_bound_holds = false;
  double tolerance = 0.0;
};

/// Smallest integer c with c² ≥ n.
inline std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto c = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (c * c < n) ++c;
  while (c > 0 && (c - 1) * (c - 1) >= n) --c;
  return c;
}

/// ⌈√n⌉² ≤ 2n, integer arithmetic only.
inline bool ceil_sqrt_bound_check(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("ceil_sqrt_bound_check needs n >= 1");
  const std::uint64_t c = ceil_sqrt(n);
  return c * c <= 2 * n;
}

/// Report from given counts; both flags use exact integer arithmetic.
inline UncertaintyReport make_report(std::size_t rows, std::size_t cols, std::size_t n_time, std::size_t n_freq,
                                     double tol) {
  UncertaintyReport r;
  r.rows = rows;
  r.cols = cols;
  r.n_time = n_time;
  r.n_freq = n_freq;
  r.product = n_time * n_freq;
  r.sum = n_time + n_freq;
  r.product_bound_holds = r.product >= rows * cols;
  r.sum_bound_holds = r.sum * r.sum >= 4 * rows * cols;
  r.tolerance = tol;
  return r;
}

inline UncertaintyReport audit(const QSignal& f, const TransformPlan& plan, double tol) {
  const std::size_t n_time = count_nonzero(f, tol);
  if (n_time == 0) throw ZeroSignal();
  const std::size_t n_freq = count_nonzero(plan.apply(f), tol);
  return make_report(f.rows(), f.cols(), n_time, n_freq, tol);
}

inline UncertaintyReport audit(const QSignal& f, double tol) {
  return audit(f, TransformPlan(f.rows(), f.cols()), tol);
}

inline UncertaintyReport audit(const QSignal& f) { return audit(f, default_tolerance(f)); }

struct Counterexample {
  Support support;
  QSignal signal;
  UncertaintyReport report;
};

struct VerifyResult {
  bool holds = true;
  std::optional<Counterexample> counterexample;
  std::size_t supports_checked = 0;
  std::size_t signals_checked = 0;
};

inline constexpr std::size_t kMaxExhaustiveCells = 16;

/**
 * Audits `trials_per_support` random signals on every nonempty support of an
 * M×N grid. Supports are visited in increasing order of their row-major
 * bitmask; the first violating signal is returned.
 */
inline VerifyResult exhaustive_verify(std::size_t rows, std::size_t cols, std::size_t trials_per_support,
                                      std::uint64_t seed) {
  if (rows == 0 || cols == 0) throw InvalidArgument("grid dimensions must be positive");
  if (rows * cols > kMaxExhaustiveCells) throw TooLarge("exhaustive verification needs M*N <= 16");
  const std::size_t cells = rows * cols;
  const TransformPlan plan(rows, cols);
  Rng rng(seed);
  VerifyResult out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells); ++mask) {
    const Support supp = Support::from_mask(rows, cols, mask);
    ++out.supports_checked;
    for (std::size_t trial = 0; trial < trials_per_support; ++trial) {
      QSignal f = random_signal_on(supp, rng);
      ++out.signals_checked;
      UncertaintyReport rep = audit(f, plan, default_tolerance(f));
      if (!rep.product_bound_holds) {
        out.holds = false;
        out.counterexample = Counterexample{supp, std::move(f), rep};
        return out;
      }
    }
  }
  return out;
}

struct FreqSupportSearch {
  /// Smallest n_freq observed; an upper bound on the true minimum.
  std::size_t minimum = 0;
  std::optional<QSignal> witness;
  std::size_t signals_tried = 0;
};

namespace detail {

/// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order,
/// stopping early when visit returns false.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    if (!visit(static_cast<const std::vector<std::size_t>&>(c))) return;
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

inline bool exact_support(const QSignal& f, const Support& supp, double rel) {
  double top = 0.0;
  for (const Quaternion& q : f.data()) top = std::max(top, modulus(q));
  if (top == 0.0) return false;
  for (std::size_t p = 0; p < f.size(); ++p) {
    const double m = modulus(f.data()[p]);
    if (supp.contains_flat(p) ? m < rel * top : m > 1e-12 * top) return false;
  }
  return true;
}

}  // namespace detail

/**
 * Empirical minimum of n_freq over signals supported exactly on `supp`.
 *
 * Two samplers feed the minimum: plain random signals on the support (which
 * almost surely have full spectra), and random elements of the subspace of
 * signals on the support whose spectrum vanishes outside a candidate frequency
 * set S. Candidate sets are tried in increasing size, so structured
 * cancellations (row signals, combs) are found. The value remains an
 * observation, not a certificate.
 */
inline FreqSupportSearch min_freq_support_for(std::size_t rows, std::size_t cols, const Support& supp,
                                              std::size_t trials, std::uint64_t seed) {
  if (rows * cols > kMaxExhaustiveCells) throw TooLarge("support search needs M*N <= 16");
  if (supp.rows() != rows || supp.cols() != cols) throw ShapeMismatch("support grid differs from M x N");
  if (supp.empty()) throw InvalidArgument("support must be nonempty");
  const std::size_t cells = rows * cols;
  const TransformPlan plan(rows, cols);
  Rng rng(seed);
  FreqSupportSearch out;
  out.minimum = cells + 1;

  auto consider = [&](QSignal f) {
    ++out.signals_tried;
    const std::size_t nf = count_nonzero(plan.apply(f), default_tolerance(f));
    if (nf < out.minimum) {
      out.minimum = nf;
      out.witness = std::move(f);
    }
  };

  for (std::size_t t = 0; t < trials; ++t) consider(random_signal_on(supp, rng));

  const linalg::Matrix embed = real_embedding_matrix(plan);
  const std::vector<std::size_t> time_cells = supp.flat();
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (std::size_t size = 1; size < out.minimum && size <= cells; ++size) {
    detail::for_each_combination(cells, size, [&](const std::vector<std::size_t>& freq) {
      std::vector<char> keep(cells, 0);
      for (std::size_t p : freq) keep[p] = 1;
      // Rows of the transform that must vanish, restricted to columns on the support.
      linalg::Matrix b(4 * (cells - size), 4 * time_cells.size());
      std::size_t r = 0;
      for (std::size_t p = 0; p < cells; ++p) {
        if (keep[p]) continue;
        for (std::size_t c = 0; c < 4; ++c, ++r)
          for (std::size_t k = 0; k < time_cells.size(); ++k)
            for (std::size_t bb = 0; bb < 4; ++bb) b(r, 4 * k + bb) = embed(4 * p + c, 4 * time_cells[k] + bb);
      }
      const linalg::Matrix basis = linalg::null_space(b);
      if (basis.cols() == 0) return true;
      for (std::size_t t = 0; t < std::max<std::size_t>(trials, 1); ++t) {
        std::vector<double> coeff(basis.cols());
        for (double& c : coeff) c = gauss(rng);
        std::vector<double> vec(4 * cells, 0.0);
        for (std::size_t k = 0; k < time_cells.size(); ++k)
          for (std::size_t bb = 0; bb < 4; ++bb) {
            double v = 0.0;
            for (std::size_t c = 0; c < basis.cols(); ++c) v += basis(4 * k + bb, c) * coeff[c];
            vec[4 * time_cells[k] + bb] = v;
          }
        QSignal f = unvectorize(rows, cols, vec);
        if (!detail::exact_support(f, supp, 1e-3)) continue;
        consider(std::move(f));
        if (out.minimum <= size) return false;
      }
      return true;
    });
    if (out.minimum <= size) break;
  }
  return out;
}

/// Minimum of min_freq_support_for over every support with `support_size` cells.
inline FreqSupportSearch min_freq_for_support_size(std::size_t rows, std::size_t cols, std::size_t support_size,
                                                   std::size_t trials, std::uint64_t seed) {
  if (support_size == 0 || support_size > rows * cols) throw OutOfRange("support size out of range");
  FreqSupportSearch best;
  best.minimum = rows * cols + 1;
  std::uint64_t sub_seed = seed;
  detail::for_each_combination(rows * cols, support_size, [&](const std::vector<std::size_t>& cells) {
    FreqSupportSearch r = min_freq_support_for(rows, cols, Support::from_flat(rows, cols, cells), trials, sub_seed++);
    best.signals_tried += r.signals_tried;
    if (r.minimum < best.minimum) {
      best.minimum = r.minimum;
      best.witness = std::move(r.witness);
    }
    return true;
  });
  return best;
}

enum class WindowBranch { square, strip };

struct WindowCheckReport {
  bool holds = true;
  WindowBranch branch = WindowBranch::square;
  std::size_t n_time = 0;
  std::size_t window_rows = 0;
  std::size_t window_cols = 0;
  std::size_t required_nonzeros = 1;
  std::size_t windows_checked = 0;
  std::optional<Index> failing_anchor;
};

/**
 * Checks the periodic-window lemmas on the spectrum of f. With m = ⌈√n_time⌉:
 *  - m ≤ min(M,N): every m×m window must hold ≥ 1 nonzero, or ≥ 2 when n_time
 *    is not a perfect square;
 *  - otherwise (strip branch) every min(M,N)×(m-1) window along the shorter
 *    side must hold ≥ 1 nonzero.
 * All M·N anchors are checked with wraparound.
 */
inline WindowCheckReport consecutive_window_nonzero_check(const QSignal& f, double tol) {
  WindowCheckReport rep;
  rep.n_time = count_nonzero(f, tol);
  if (rep.n_time == 0) throw ZeroSignal();
  const std::size_t rows = f.rows(), cols = f.cols();
  const std::size_t m = ceil_sqrt(rep.n_time);
  if (m <= std::min(rows, cols)) {
    rep.branch = WindowBranch::square;
    rep.window_rows = rep.window_cols = m;
    rep.required_nonzeros = m * m == rep.n_time ? 1 : 2;
  } else {
    rep.branch = WindowBranch::strip;
    if (rows <= cols) {
      rep.window_rows = rows;
      rep.window_cols = m - 1;
    } else {
      rep.window_rows = m - 1;
      rep.window_cols = cols;
    }
    rep.required_nonzeros = 1;
  }
  const QSignal spec = TransformPlan(rows, cols).apply(f);
  for (std::size_t top = 0; top < rows; ++top)
    for (std::size_t left = 0; left < cols; ++left) {
      ++rep.windows_checked;
      const QSignal w = consecutive_submatrix(spec, static_cast<long long>(top), static_cast<long long>(left),
                                              rep.window_rows, rep.window_cols);
      if (count_nonzero(w, tol) < rep.required_nonzeros && rep.holds) {
        rep.holds = false;
        rep.failing_anchor = Index{top, left};
      }
    }
  return rep;
}

inline WindowCheckReport consecutive_window_nonzero_check(const QSignal& f) {
  return consecutive_window_nonzero_check(f, default_tolerance(f));
}

/// f = 1 at the origin of an M×N grid, 0 elsewhere.
inline QSignal delta_signal(std::size_t rows, std::size_t cols) { return QSignal::delta(rows, cols, 0, 0); }

/// N×N comb with N = k·l: ones at (k·p, k·q) for p, q < l.
inline QSignal comb_pattern(std::size_t k, std::size_t l) {
  if (k == 0 || l == 0) throw InvalidArgument("comb factors must be positive");
  const std::size_t n = k * l;
  QSignal f(n, n);
  for (std::size_t p = 0; p < l; ++p)
    for (std::size_t q = 0; q < l; ++q) f(k * p, k * q) = Quaternion(1.0);
  return f;
}

/// Closed-form spectrum of comb_pattern(k, l): l/k at (a·l, b·l) for a, b < k.
inline QSignal comb_pattern_spectrum(std::size_t k, std::size_t l) {
  const std::size_t n = k * l;
  QSignal g(n, n);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      g(a * l, b * l) = Quaternion(static_cast<double>(l) / static_cast<double>(k));
  return g;
}

}  // namespace dqup

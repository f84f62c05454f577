#pragma once

/**
 * @file recovery.hpp
 * @brief Recovery of sparse quaternion signals from band-limited spectra.
 *
 * Observation model: only the transform coefficients on a band Ω are seen,
 *
 *   observed(u,v) = F(u,v) + noise(u,v)   for (u,v) ∈ Ω,   0 on Λ = Ω^c.
 *
 * With the sparsity s of the signal known, every support τ with |τ| = s is
 * tried: a real least-squares fit of the spectrum on Ω by signals living on
 * τ, solved through the 4MN×4MN real matrix of the transform. The candidate
 * with the smallest residual wins; ties go to the lexicographically first τ.
 *
 * When 2·s·|Λ| < MN the noiseless answer is unique, and with ‖noise‖ ≤ ε the
 * error obeys ‖f - f̃‖ ≤ 2ε / √(1 - 2·s·|Λ|/MN).
 *
 * Residuals are measured in the frequency domain; the transform is unitary,
 * so this equals the time-domain ‖r - P_Ω f̃‖.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "dqft.hpp"
#include "linalg.hpp"
#include "qsignal.hpp"
#include "random.hpp"
#include "uncertainty.hpp"

namespace dqup {

/// Ideal band-pass projection: inverse transform of the spectrum restricted to `band`.
inline QSignal bandpass(const QSignal& f, const Support& band) {
  if (band.rows() != f.rows() || band.cols() != f.cols()) throw OutOfRange("band grid differs from signal");
  const TransformPlan fwd(f.rows(), f.cols(), Direction::forward);
  const TransformPlan inv(f.rows(), f.cols(), Direction::inverse);
  return inv.apply(restrict_to(fwd.apply(f), band));
}

/// 2·sparsity·|Λ| < M·N with |Λ| = MN - |band|.
inline bool uniqueness_condition(std::size_t rows, std::size_t cols, std::size_t sparsity, const Support& band) {
  const std::size_t cells = rows * cols;
  const std::size_t missing = cells - std::min(band.size(), cells);
  return 2 * sparsity * missing < cells;
}

/// 2ε / √(1 - 2·sparsity·|Λ|/MN).
inline double stability_bound(double eps, std::size_t sparsity, std::size_t lambda_size, std::size_t rows,
                              std::size_t cols) {
  if (eps < 0.0) throw InvalidArgument("noise bound must be nonnegative");
  const std::size_t cells = rows * cols;
  if (!(2 * sparsity * lambda_size < cells))
    throw ConditionViolated("stability bound needs 2*sparsity*|missing band| < M*N");
  const double frac = 2.0 * static_cast<double>(sparsity * lambda_size) / static_cast<double>(cells);
  return 2.0 * eps / std::sqrt(1.0 - frac);
}

/// Saturating binomial coefficient.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    if (r > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
    r = r * num / i;  // exact: r·num is divisible by i at this point
  }
  return r;
}

/// The rank-th (0-based) k-subset of {0..n-1} in lexicographic order.
inline std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t k, std::uint64_t rank) {
  std::vector<std::size_t> c;
  c.reserve(k);
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    for (;; ++next) {
      const std::uint64_t with_next = binomial(n - next - 1, k - slot - 1);
      if (rank < with_next) break;
      rank -= with_next;
    }
    c.push_back(next++);
  }
  return c;
}

/// Advances to the next k-subset in lexicographic order; false after the last.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
  if (i == 0) return false;
  ++c[i - 1];
  for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

struct RecoveryProblem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Support band;
  QSignal observed;  ///< spectrum samples on the band, zero elsewhere
  std::size_t sparsity = 1;
  double noise_bound = 0.0;

  /// Throws on broken invariants.
  void validate() const {
    if (band.rows() != rows || band.cols() != cols) throw ShapeMismatch("band grid differs from M x N");
    if (observed.rows() != rows || observed.cols() != cols) throw ShapeMismatch("observed spectrum is not M x N");
    if (sparsity < 1 || sparsity > rows * cols) throw InvalidArgument("sparsity must be in [1, M*N]");
    if (noise_bound < 0.0) throw InvalidArgument("noise bound must be nonnegative");
    const double tol = default_tolerance(observed);
    for (std::size_t p = 0; p < observed.size(); ++p)
      if (!band.contains_flat(p) && modulus(observed.data()[p]) > tol)
        throw InvalidArgument("observed spectrum is nonzero outside the band");
  }
};

struct RecoveryResult {
  QSignal signal;
  Support support;
  double residual = 0.0;
  bool unique = false;
  std::uint64_t candidates_searched = 0;
  /// Normal equations of the chosen support were singular; minimum-norm solution used.
  bool degenerate = false;
};

struct RecoveryOptions {
  std::uint64_t search_budget = 2'000'000;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
  double tie_tolerance = 1e-12;
};

/// Noiseless observation: the spectrum of f restricted to `band`.
inline QSignal observe(const QSignal& f, const Support& band) {
  return restrict_to(TransformPlan(f.rows(), f.cols()).apply(f), band);
}

namespace detail {

class SupportSearch {
 public:
  SupportSearch(const RecoveryProblem& p, double tie_tol)
      : cells_(p.rows * p.cols), k_(p.sparsity), tie_tol_(tie_tol) {
    const TransformPlan plan(p.rows, p.cols);
    const linalg::Matrix embed = real_embedding_matrix(plan);
    const std::vector<std::size_t> band = p.band.flat();
    m_ = 4 * band.size();
    // Columns of the band-restricted design matrix, stored contiguously.
    columns_.assign(4 * cells_ * m_, 0.0);
    for (std::size_t c = 0; c < 4 * cells_; ++c)
      for (std::size_t b = 0; b < band.size(); ++b)
        for (std::size_t comp = 0; comp < 4; ++comp)
          columns_[c * m_ + 4 * b + comp] = embed(4 * band[b] + comp, c);
    y_.resize(m_);
    for (std::size_t b = 0; b < band.size(); ++b)
      for (std::size_t comp = 0; comp < 4; ++comp) y_[4 * b + comp] = p.observed.data()[band[b]][comp];
    const std::size_t n = 4 * cells_;
    gram_.assign(n * n, 0.0);
    rhs_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* ci = &columns_[i * m_];
      rhs_[i] = std::inner_product(ci, ci + m_, y_.begin(), 0.0);
      for (std::size_t j = i; j < n; ++j) {
        const double v = std::inner_product(ci, ci + m_, &columns_[j * m_], 0.0);
        gram_[i * n + j] = gram_[j * n + i] = v;
      }
    }
  }

  struct Candidate {
    double residual = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> cells;
    std::vector<double> coeffs;
    bool degenerate = false;
  };

  /// Best candidate over ranks [begin, end).
  Candidate scan(std::uint64_t begin, std::uint64_t end) const {
    Candidate best;
    if (begin >= end) return best;
    std::vector<std::size_t> comb = unrank_combination(cells_, k_, begin);
    const std::size_t u = 4 * k_;
    std::vector<std::size_t> cols(u);
    std::vector<double> g(u * u), x(u), r(m_);
    for (std::uint64_t rank = begin; rank < end; ++rank) {
      for (std::size_t a = 0; a < k_; ++a)
        for (std::size_t b = 0; b < 4; ++b) cols[4 * a + b] = 4 * comb[a] + b;
      const std::size_t n = 4 * cells_;
      for (std::size_t i = 0; i < u; ++i) {
        x[i] = rhs_[cols[i]];
        for (std::size_t j = 0; j < u; ++j) g[i * u + j] = gram_[cols[i] * n + cols[j]];
      }
      bool degenerate = false;
      if (!linalg::cholesky_solve_inplace(g, x, u)) {
        degenerate = true;
        linalg::Matrix gm(u, u);
        for (std::size_t i = 0; i < u; ++i)
          for (std::size_t j = 0; j < u; ++j) gm(i, j) = gram_[cols[i] * n + cols[j]];
        std::vector<double> b(u);
        for (std::size_t i = 0; i < u; ++i) b[i] = rhs_[cols[i]];
        x = linalg::solve_normal_equations(gm, b).x;
      }
      std::copy(y_.begin(), y_.end(), r.begin());
      for (std::size_t i = 0; i < u; ++i) {
        const double xi = x[i];
        const double* ci = &columns_[cols[i] * m_];
        for (std::size_t e = 0; e < m_; ++e) r[e] -= xi * ci[e];
      }
      const double res = linalg::norm(r);
      if (res < best.residual - tie_tol_) {
        best.residual = res;
        best.cells = comb;
        best.coeffs = x;
        best.degenerate = degenerate;
      }
      next_combination(comb, cells_);
    }
    return best;
  }

  double tie_tolerance() const { return tie_tol_; }

 private:
  std::size_t cells_;
  std::size_t k_;
  double tie_tol_;
  std::size_t m_ = 0;
  std::vector<double> columns_;
  std::vector<double> y_;
  std::vector<double> gram_;
  std::vector<double> rhs_;
};

}  // namespace detail

/**
 * Exhaustive support search. Candidate ranks are cut into a fixed number of
 * contiguous chunks that workers pick up in any order; chunk winners are then
 * reduced in rank order, so the answer does not depend on the worker count.
 */
inline RecoveryResult recover(const RecoveryProblem& problem, const RecoveryOptions& opts = {}) {
  problem.validate();
  if (problem.band.empty()) throw EmptyBand();
  const std::size_t cells = problem.rows * problem.cols;
  const std::uint64_t combos = binomial(cells, problem.sparsity);
  if (combos > opts.search_budget)
    throw SearchBudgetExceeded("C(" + std::to_string(cells) + ", " + std::to_string(problem.sparsity) +
                               ") candidate supports exceed the search budget of " +
                               std::to_string(opts.search_budget));

  const detail::SupportSearch search(problem, opts.tie_tolerance);
  constexpr std::uint64_t kChunks = 64;
  const std::uint64_t chunks = std::min<std::uint64_t>(kChunks, combos);
  std::vector<detail::SupportSearch::Candidate> winners(chunks);
  auto bounds = [&](std::uint64_t c) { return combos / chunks * c + std::min(c, combos % chunks); };

  unsigned workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) winners[c] = search.scan(bounds(c), bounds(c + 1));
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) winners[c] = search.scan(bounds(c), bounds(c + 1));
      });
    for (std::thread& t : pool) t.join();
  }

  const detail::SupportSearch::Candidate* best = nullptr;
  for (const auto& w : winners)
    if (!w.cells.empty() && (!best || w.residual < best->residual - opts.tie_tolerance)) best = &w;
  if (!best) throw NumericError("no candidate support produced a finite residual");

  RecoveryResult out{QSignal(problem.rows, problem.cols), Support(problem.rows, problem.cols)};
  for (std::size_t a = 0; a < best->cells.size(); ++a) {
    const std::size_t p = best->cells[a];
    out.signal.data()[p] =
        Quaternion(best->coeffs[4 * a], best->coeffs[4 * a + 1], best->coeffs[4 * a + 2], best->coeffs[4 * a + 3]);
  }
  out.support = Support::from_flat(problem.rows, problem.cols, best->cells);
  out.residual = best->residual;
  out.unique = uniqueness_condition(problem.rows, problem.cols, problem.sparsity, problem.band);
  out.candidates_searched = combos;
  out.degenerate = best->degenerate;
  return out;
}

/// ‖P_Λ P_T‖: largest singular value of the map "signal on T -> its spectrum on Λ".
inline double time_band_operator_norm(const Support& time_support, const Support& missing_band) {
  const std::size_t rows = time_support.rows(), cols = time_support.cols();
  if (missing_band.rows() != rows || missing_band.cols() != cols) throw ShapeMismatch("grids differ");
  if (time_support.empty() || missing_band.empty()) return 0.0;
  const linalg::Matrix embed = real_embedding_matrix(TransformPlan(rows, cols));
  const auto t = time_support.flat();
  const auto l = missing_band.flat();
  linalg::Matrix block(4 * l.size(), 4 * t.size());
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b)
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) block(4 * a + i, 4 * b + j) = embed(4 * l[a] + i, 4 * t[b] + j);
  return linalg::spectral_norm(block);
}

struct TrialRecord {
  std::uint64_t seed = 0;
  Support truth_support;
  Support support;  ///< chosen by recover()
  double residual = 0.0;
  double error = 0.0;
  double bound = 0.0;
  double ratio = 0.0;  ///< error / bound (0 when the bound is 0 and the error is 0)
  bool within_bound = true;
};

struct ExperimentRecord {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t sparsity = 0;
  std::size_t lambda_size = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::vector<TrialRecord> trials;
  double max_ratio = 0.0;
  double max_error = 0.0;
  std::size_t violations = 0;
};

/// Noise supported on `band` in frequency with Gaussian components, rescaled to ‖n‖ = eps.
inline QSignal band_noise(const Support& band, double eps, Rng& rng) {
  QSignal n(band.rows(), band.cols());
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t p : band.flat()) {
    const double w = gauss(rng), x = gauss(rng), y = gauss(rng), z = gauss(rng);
    n.data()[p] = Quaternion(w, x, y, z);
  }
  const double norm = frobenius_norm(n);
  return norm > 0.0 ? n * (eps / norm) : n;
}

/**
 * Plants `trials` random s-sparse signals, observes them on `band` with noise of
 * norm exactly eps, recovers, and compares ‖f - f̃‖ with stability_bound().
 * Each trial reseeds from a master engine; the per-trial seed is recorded.
 */
inline ExperimentRecord noisy_recovery_experiment(std::size_t rows, std::size_t cols, std::size_t sparsity,
                                                  const Support& band, double eps, std::size_t trials,
                                                  std::uint64_t seed, const RecoveryOptions& opts = {}) {
  if (!uniqueness_condition(rows, cols, sparsity, band))
    throw ConditionViolated("experiment needs 2*sparsity*|missing band| < M*N");
  ExperimentRecord rec;
  rec.rows = rows;
  rec.cols = cols;
  rec.sparsity = sparsity;
  rec.lambda_size = rows * cols - band.size();
  rec.eps = eps;
  rec.seed = seed;
  const double bound = stability_bound(eps, sparsity, rec.lambda_size, rows, cols);
  Rng master(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = master();
    Rng rng(trial_seed);
    const QSignal truth = random_sparse_signal(rows, cols, sparsity, rng);
    const QSignal noisy = observe(truth, band) + band_noise(band, eps, rng);
    const RecoveryResult res = recover(RecoveryProblem{rows, cols, band, noisy, sparsity, eps}, opts);
    TrialRecord tr{trial_seed, support_of(truth), res.support};
    tr.residual = res.residual;
    tr.error = distance(truth, res.signal);
    tr.bound = bound;
    tr.ratio = bound > 0.0 ? tr.error / bound : 0.0;
    // Exact recovery in the noiseless case holds up to round-off.
    tr.within_bound = tr.error <= bound + 1e-9 * std::max(1.0, frobenius_norm(truth));
    rec.max_ratio = std::max(rec.max_ratio, tr.ratio);
    rec.max_error = std::max(rec.max_error, tr.error);
    if (!tr.within_bound) ++rec.violations;
    rec.trials.push_back(std::move(tr));
  }
  return rec;
}

}  // namespace dqup

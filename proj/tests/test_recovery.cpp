#include <cmath>

#include <gtest/gtest.h>

#include "dqup/band.hpp"
#include "dqup/dqft.hpp"
#include "dqup/random.hpp"
#include "dqup/recovery.hpp"

using dqup::Index;
using dqup::QSignal;
using dqup::Quaternion;
using dqup::RecoveryProblem;
using dqup::Support;

namespace {

Support band_without(std::size_t m, std::size_t n, std::initializer_list<Index> missing) {
  return Support(m, n, missing).complement();
}

}  // namespace

TEST(Recovery, Bandpass) {
  dqup::Rng rng(1);
  const QSignal f = dqup::random_signal(3, 4, rng);
  EXPECT_LE(distance(dqup::bandpass(f, Support::full(3, 4)), f), 1e-12);
  EXPECT_EQ(frobenius_norm(dqup::bandpass(f, Support(3, 4))), 0.0);
  const QSignal quarter = dqup::bandpass(dqup::delta_signal(2, 2), Support(2, 2, {{0, 0}}));
  EXPECT_LE(max_abs_difference(quarter, QSignal::constant(2, 2, Quaternion(0.25))), 1e-15);
  const Support band = dqup::random_band(3, 4, 7, 5);
  const QSignal once = dqup::bandpass(f, band);
  EXPECT_LE(max_abs_difference(dqup::bandpass(once, band), once), 1e-10);
  EXPECT_THROW(dqup::bandpass(f, Support(4, 3)), dqup::OutOfRange);
}

TEST(Recovery, UniquenessCondition) {
  EXPECT_TRUE(dqup::uniqueness_condition(4, 4, 1, band_without(4, 4, {{0, 0}, {3, 3}})));
  EXPECT_FALSE(dqup::uniqueness_condition(2, 2, 1, band_without(2, 2, {{0, 1}, {1, 0}})));
  EXPECT_TRUE(dqup::uniqueness_condition(3, 3, 9, Support::full(3, 3)));
}

TEST(Recovery, StabilityBound) {
  EXPECT_EQ(dqup::stability_bound(0.0, 1, 1, 4, 4), 0.0);
  EXPECT_DOUBLE_EQ(dqup::stability_bound(0.3, 2, 0, 4, 4), 0.6);
  EXPECT_NEAR(dqup::stability_bound(0.1, 1, 1, 4, 4), 0.2 / std::sqrt(7.0 / 8.0), 1e-15);
  EXPECT_NEAR(dqup::stability_bound(0.1, 1, 1, 4, 4), 0.21381, 1e-5);
  EXPECT_THROW(dqup::stability_bound(0.1, 2, 4, 4, 4), dqup::ConditionViolated);
  EXPECT_THROW(dqup::stability_bound(-1.0, 1, 1, 4, 4), dqup::InvalidArgument);
}

TEST(Recovery, Combinatorics) {
  EXPECT_EQ(dqup::binomial(16, 8), 12870u);
  EXPECT_EQ(dqup::binomial(5, 0), 1u);
  EXPECT_EQ(dqup::binomial(3, 4), 0u);
  // unranking agrees with successive next_combination
  std::vector<std::size_t> c{0, 1, 2};
  for (std::uint64_t r = 0; r < dqup::binomial(7, 3); ++r) {
    EXPECT_EQ(dqup::unrank_combination(7, 3, r), c);
    dqup::next_combination(c, 7);
  }
}

TEST(Recovery, DeltaExample) {
  const QSignal truth = QSignal::delta(4, 4, 1, 2, Quaternion(2, 1, 0, 0));
  const Support band = band_without(4, 4, {{0, 0}, {3, 3}});
  const auto res = dqup::recover(RecoveryProblem{4, 4, band, dqup::observe(truth, band), 1, 0.0});
  EXPECT_LE(res.residual, 1e-8);
  EXPECT_LE(max_abs_difference(res.signal, truth), 1e-10);
  EXPECT_EQ(res.support, Support(4, 4, {{1, 2}}));
  EXPECT_TRUE(res.unique);
  EXPECT_FALSE(res.degenerate);
  EXPECT_EQ(res.candidates_searched, 16u);
}

TEST(Recovery, FullSparsityFullBand) {
  dqup::Rng rng(2);
  const QSignal truth = dqup::random_signal(2, 2, rng);
  const Support band = Support::full(2, 2);
  const auto res = dqup::recover(RecoveryProblem{2, 2, band, dqup::observe(truth, band), 4, 0.0});
  EXPECT_LE(max_abs_difference(res.signal, truth), 1e-10);
  EXPECT_EQ(res.candidates_searched, 1u);
}

TEST(Recovery, OneMissingCellIn2x2) {
  dqup::Rng rng(3);
  const Support band = band_without(2, 2, {{1, 1}});
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      for (int trial = 0; trial < 5; ++trial) {
        const QSignal truth = QSignal::delta(2, 2, r, c, dqup::random_nonzero_quaternion(rng));
        const auto res = dqup::recover(RecoveryProblem{2, 2, band, dqup::observe(truth, band), 1, 0.0});
        EXPECT_TRUE(res.unique);
        EXPECT_LE(max_abs_difference(res.signal, truth), 1e-8);
      }
}

TEST(Recovery, UniquenessViolationHasAmbiguity) {
  // M = N = 2, sparsity 1, two missing frequencies: 2·1·2 = 4 is not < 4.
  // Two 1-sparse signals at cells p ≠ q agree on the band iff
  // [A_p | -A_q] has a nonzero null vector, A_c being the 4 design columns of cell c.
  const Support band = band_without(2, 2, {{0, 1}, {1, 1}});
  ASSERT_FALSE(dqup::uniqueness_condition(2, 2, 1, band));
  const auto embed = dqup::real_embedding_matrix(dqup::TransformPlan(2, 2));
  const auto rows = band.flat();
  bool found = false;
  for (std::size_t p = 0; p < 4 && !found; ++p)
    for (std::size_t q = p + 1; q < 4 && !found; ++q) {
      dqup::linalg::Matrix sys(4 * rows.size(), 8);
      for (std::size_t b = 0; b < rows.size(); ++b)
        for (std::size_t comp = 0; comp < 4; ++comp)
          for (std::size_t k = 0; k < 4; ++k) {
            sys(4 * b + comp, k) = embed(4 * rows[b] + comp, 4 * p + k);
            sys(4 * b + comp, 4 + k) = -embed(4 * rows[b] + comp, 4 * q + k);
          }
      const auto ns = dqup::linalg::null_space(sys);
      if (ns.cols() == 0) continue;
      const Quaternion a(ns(0, 0), ns(1, 0), ns(2, 0), ns(3, 0));
      const Quaternion b(ns(4, 0), ns(5, 0), ns(6, 0), ns(7, 0));
      if (modulus(a) < 1e-6 || modulus(b) < 1e-6) continue;
      const QSignal f1 = QSignal::delta(2, 2, p / 2, p % 2, a);
      const QSignal f2 = QSignal::delta(2, 2, q / 2, q % 2, b);
      EXPECT_LE(max_abs_difference(dqup::observe(f1, band), dqup::observe(f2, band)), 1e-10);
      EXPECT_GT(distance(f1, f2), 0.5);
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(Recovery, WorkerCountDoesNotChangeAnswer) {
  dqup::Rng rng(4);
  const Support band = dqup::random_band(4, 4, 13, 9);
  const QSignal truth = dqup::random_sparse_signal(4, 4, 2, rng);
  const QSignal obs = dqup::observe(truth, band) + dqup::band_noise(band, 0.05, rng);
  const RecoveryProblem prob{4, 4, band, obs, 2, 0.05};
  dqup::RecoveryOptions one, four;
  one.workers = 1;
  four.workers = 4;
  const auto a = dqup::recover(prob, one), b = dqup::recover(prob, four);
  EXPECT_EQ(a.support, b.support);
  EXPECT_EQ(a.signal, b.signal);
  EXPECT_EQ(a.residual, b.residual);
}

TEST(Recovery, Errors) {
  const QSignal obs(2, 2);
  EXPECT_THROW(dqup::recover(RecoveryProblem{2, 2, Support(2, 2), obs, 1, 0.0}), dqup::EmptyBand);
  dqup::RecoveryOptions tight;
  tight.search_budget = 5;
  EXPECT_THROW(dqup::recover(RecoveryProblem{2, 2, Support::full(2, 2), obs, 2, 0.0}, tight),
               dqup::SearchBudgetExceeded);
  EXPECT_THROW(dqup::recover(RecoveryProblem{2, 2, Support::full(2, 2), obs, 0, 0.0}), dqup::InvalidArgument);
  QSignal outside(2, 2);
  outside(1, 1) = Quaternion(1.0);
  EXPECT_THROW(dqup::recover(RecoveryProblem{2, 2, Support(2, 2, {{0, 0}}), outside, 1, 0.0}),
               dqup::InvalidArgument);
  EXPECT_THROW(dqup::recover(RecoveryProblem{2, 2, Support::full(2, 3), QSignal(2, 3), 1, 0.0}),
               dqup::ShapeMismatch);
}

TEST(Recovery, DegenerateSystemIsFlagged) {
  // One observed frequency cannot pin down two cells: the 8x8 normal
  // equations have rank 4.
  QSignal obs(2, 2);
  obs(0, 0) = Quaternion(1.0);
  const auto res = dqup::recover(RecoveryProblem{2, 2, Support(2, 2, {{0, 0}}), obs, 2, 0.0});
  EXPECT_TRUE(res.degenerate);
  EXPECT_FALSE(res.unique);
  EXPECT_LE(res.residual, 1e-10);
}

TEST(Recovery, NoisyExperiment) {
  const Support band = band_without(4, 4, {{2, 3}});
  const auto rec = dqup::noisy_recovery_experiment(4, 4, 1, band, 0.01, 50, 17);
  EXPECT_EQ(rec.trials.size(), 50u);
  EXPECT_EQ(rec.violations, 0u);
  EXPECT_LE(rec.max_error, 0.21381 * (0.01 / 0.1) + 1e-6);
  EXPECT_LT(rec.max_ratio, 1.0);

  const auto clean = dqup::noisy_recovery_experiment(4, 4, 1, band, 0.0, 10, 17);
  EXPECT_LE(clean.max_error, 1e-8);
  EXPECT_EQ(clean.violations, 0u);

  // Same seeds, doubled noise: errors and the bound both double.
  const auto dbl = dqup::noisy_recovery_experiment(4, 4, 1, band, 0.02, 50, 17);
  for (std::size_t t = 0; t < 50; ++t) EXPECT_NEAR(dbl.trials[t].ratio, rec.trials[t].ratio, 1e-6);

  EXPECT_THROW(dqup::noisy_recovery_experiment(2, 2, 1, band_without(2, 2, {{0, 0}, {1, 1}}), 0.1, 1, 1),
               dqup::ConditionViolated);
}

TEST(Recovery, NoiseHasExactNorm) {
  dqup::Rng rng(6);
  const Support band = dqup::random_band(3, 3, 5, 1);
  const QSignal n = dqup::band_noise(band, 0.37, rng);
  EXPECT_NEAR(frobenius_norm(n), 0.37, 1e-14);
  EXPECT_EQ(restrict_to(n, band), n);
}

TEST(Recovery, OperatorNormWithinTheoreticalBound) {
  // ‖P_Λ P_T‖² ≤ |T|·|Λ| / MN on small grids, sampled over random supports.
  dqup::Rng rng(7);
  double worst = 0.0;
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 3}, {2, 4}}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::uniform_int_distribution<std::size_t> size(1, m * n);
      const Support t = dqup::random_support(m, n, size(rng), rng);
      const Support l = dqup::random_support(m, n, size(rng), rng);
      const double op = dqup::time_band_operator_norm(t, l);
      const double bound = static_cast<double>(t.size() * l.size()) / static_cast<double>(m * n);
      EXPECT_LE(op * op, bound + 1e-9);
      EXPECT_LE(op, 1.0 + 1e-9);
      worst = std::max(worst, op * op / bound);
    }
  }
  RecordProperty("max_ratio_to_bound", std::to_string(worst));
}

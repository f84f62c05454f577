#pragma once

// Worked examples with known answers, regenerated on demand (CLI `examples`).

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "dqft.hpp"
#include "qsignal.hpp"
#include "uncertainty.hpp"

namespace dqup {

struct GoldenCheck {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
};

namespace detail {
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
}  // namespace detail

/// Delta at the origin: flat spectrum 1/√(MN), product exactly MN.
inline std::vector<GoldenCheck> delta_checks(std::size_t rows, std::size_t cols) {
  const QSignal spec = dqft(delta_signal(rows, cols));
  const double level = 1.0 / std::sqrt(static_cast<double>(rows * cols));
  const double err = max_abs_difference(spec, QSignal::constant(rows, cols, Quaternion(level)));
  const UncertaintyReport rep = audit(delta_signal(rows, cols));
  const std::string grid = std::to_string(rows) + "x" + std::to_string(cols);
  return {
      {"delta " + grid + " flat spectrum", "1/sqrt(MN) = " + detail::fmt(level) + " (1e-12)",
       "max deviation " + detail::fmt(err), err <= 1e-12},
      {"delta " + grid + " product", std::to_string(rows * cols), std::to_string(rep.product),
       rep.n_time == 1 && rep.n_freq == rows * cols && rep.product == rows * cols},
  };
}

/// N×N comb with N = k·l: spectrum l/k on the (l·a, l·b) lattice, product N².
inline std::vector<GoldenCheck> comb_checks(std::size_t k, std::size_t l) {
  const QSignal f = comb_pattern(k, l);
  const double err = max_abs_difference(dqft(f), comb_pattern_spectrum(k, l));
  const UncertaintyReport rep = audit(f);
  const std::size_t n = k * l;
  const std::string tag = "comb k=" + std::to_string(k) + " l=" + std::to_string(l);
  return {
      {tag + " closed-form spectrum", "l/k = " + detail::fmt(static_cast<double>(l) / static_cast<double>(k)) +
                                          " on lattice (1e-10)",
       "max deviation " + detail::fmt(err), err <= 1e-10},
      {tag + " counts", "n_time=" + std::to_string(l * l) + " n_freq=" + std::to_string(k * k) +
                            " product=" + std::to_string(n * n),
       "n_time=" + std::to_string(rep.n_time) + " n_freq=" + std::to_string(rep.n_freq) +
           " product=" + std::to_string(rep.product),
       rep.n_time == l * l && rep.n_freq == k * k && rep.product == n * n},
  };
}

/// Case tables: the stated "at least" spectral counts per time-support size.
inline std::vector<std::pair<std::size_t, std::size_t>> stated_case_table(std::size_t rows, std::size_t cols) {
  if (rows == 2 && cols == 2) return {{1, 4}, {2, 2}, {3, 2}, {4, 1}};
  if (rows == 2 && cols == 3) return {{1, 6}, {2, 3}, {3, 3}, {4, 2}, {5, 2}, {6, 1}};
  return {};
}

/**
 * A stated value passes when the observed minimum is not below it (the
 * statement is a lower bound); `observed` also says whether it is attained.
 */
inline std::vector<GoldenCheck> case_table_checks(std::size_t rows, std::size_t cols, std::size_t trials,
                                                  std::uint64_t seed) {
  std::vector<GoldenCheck> out;
  for (auto [size, stated] : stated_case_table(rows, cols)) {
    const FreqSupportSearch s = min_freq_for_support_size(rows, cols, size, trials, seed);
    const std::string grid = std::to_string(rows) + "x" + std::to_string(cols);
    out.push_back({"case table " + grid + " |support|=" + std::to_string(size), "n_freq >= " + std::to_string(stated),
                   "min observed " + std::to_string(s.minimum) + (s.minimum == stated ? " (attained)" : ""),
                   s.minimum >= stated});
  }
  return out;
}

inline std::vector<GoldenCheck> matrix_form_checks() {
  std::vector<GoldenCheck> out;
  // V_i for M = 2 is (1/√2)[[1, 1], [1, e^{-πi}]].
  const QSignal vi = vandermonde(Axis::i, 2);
  const double r = 1.0 / std::sqrt(2.0);
  const QSignal want(2, 2, {Quaternion(r), Quaternion(r), Quaternion(r), Quaternion(-r)});
  const double e1 = max_abs_difference(vi, want);
  out.push_back({"V_i (M=2)", "(1/sqrt2)[[1,1],[1,-1]] (1e-15)", "max deviation " + detail::fmt(e1), e1 <= 1e-15});
  // V_j for N = 3, entry (2,2) = e^{-8πj/3}/√3 = e^{-2πj/3}/√3.
  const Quaternion v22 = vandermonde(Axis::j, 3)(2, 2);
  const Quaternion w22 = exp_unit(Axis::j, -2.0 * std::numbers::pi / 3.0) * (1.0 / std::sqrt(3.0));
  const double e2 = modulus(v22 - w22);
  out.push_back({"V_j (N=3) entry (2,2)", "e^{-2pi j/3}/sqrt3", "deviation " + detail::fmt(e2), e2 <= 1e-15});
  // Periodic window anchored at column 2 of a 2×3 matrix wraps to columns (2, 0).
  QSignal a(2, 3);
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t s = 0; s < 3; ++s) a(t, s) = Quaternion(static_cast<double>(10 * t + s));
  const QSignal w = consecutive_submatrix(a, 0, 2, 2, 2);
  const bool wraps = w(0, 0) == a(0, 2) && w(0, 1) == a(0, 0) && w(1, 0) == a(1, 2) && w(1, 1) == a(1, 0);
  out.push_back({"2x3 window at (0,2)", "columns (2,0)", wraps ? "columns (2,0)" : "other", wraps});
  return out;
}

inline std::vector<GoldenCheck> all_golden_checks(const std::vector<std::pair<std::size_t, std::size_t>>& combs,
                                                  std::size_t trials = 20, std::uint64_t seed = 1) {
  std::vector<GoldenCheck> out;
  auto append = [&](std::vector<GoldenCheck> v) { out.insert(out.end(), v.begin(), v.end()); };
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {4, 4}}) append(delta_checks(m, n));
  for (auto [k, l] : combs) append(comb_checks(k, l));
  append(matrix_form_checks());
  append(case_table_checks(2, 2, trials, seed));
  append(case_table_checks(2, 3, trials, seed));
  return out;
}

}  // namespace dqup

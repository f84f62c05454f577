#pragma once

// Frequency band construction: explicit index lists, periodic low-pass disks,
// seeded random bands, and the textual band spec used by the CLI.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "qsignal.hpp"
#include "random.hpp"

namespace dqup {

/// Keeps (u,v) with min(u, M-u)² + min(v, N-v)² ≤ r².
inline Support lowpass_band(std::size_t rows, std::size_t cols, double radius) {
  if (radius < 0.0) throw InvalidArgument("low-pass radius must be nonnegative");
  Support band(rows, cols);
  for (std::size_t u = 0; u < rows; ++u)
    for (std::size_t v = 0; v < cols; ++v) {
      const double du = static_cast<double>(std::min(u, rows - u));
      const double dv = static_cast<double>(std::min(v, cols - v));
      if (du * du + dv * dv <= radius * radius) band.insert({u, v});
    }
  return band;
}

inline Support random_band(std::size_t rows, std::size_t cols, std::size_t size, std::uint64_t seed) {
  Rng rng(seed);
  return random_support(rows, cols, size, rng);
}

struct ExplicitBand {
  std::vector<Index> indices;
};
struct LowpassBand {
  double radius = 0.0;
};
struct RandomBand {
  std::size_t size = 0;
  std::uint64_t seed = 0;
};
struct FullBand {};

using BandSpec = std::variant<ExplicitBand, LowpassBand, RandomBand, FullBand>;

inline Support resolve_band(const BandSpec& spec, std::size_t rows, std::size_t cols) {
  struct Visitor {
    std::size_t rows, cols;
    Support operator()(const ExplicitBand& b) const { return Support(rows, cols, b.indices); }
    Support operator()(const LowpassBand& b) const { return lowpass_band(rows, cols, b.radius); }
    Support operator()(const RandomBand& b) const { return random_band(rows, cols, b.size, b.seed); }
    Support operator()(const FullBand&) const { return Support::full(rows, cols); }
  };
  return std::visit(Visitor{rows, cols}, spec);
}

namespace detail {
template <typename T>
T parse_number(std::string_view s, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw InvalidArgument(std::string("bad ") + what + " in band spec: '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}
}  // namespace detail

/**
 * Textual band spec:
 *   full
 *   lowpass:R            periodic disk of radius R
 *   random:B:SEED        B random cells
 *   explicit:u,v;u,v;..  explicit list
 */
inline BandSpec parse_band_spec(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (kind == "full" && colon == std::string_view::npos) return FullBand{};
  if (kind == "lowpass") return LowpassBand{detail::parse_number<double>(rest, "radius")};
  if (kind == "random") {
    const auto parts = detail::split(rest, ':');
    if (parts.size() != 2) throw InvalidArgument("random band spec is random:SIZE:SEED");
    return RandomBand{detail::parse_number<std::size_t>(parts[0], "size"),
                      detail::parse_number<std::uint64_t>(parts[1], "seed")};
  }
  if (kind == "explicit") {
    ExplicitBand b;
    if (rest.empty()) return b;
    for (std::string_view item : detail::split(rest, ';')) {
      const auto uv = detail::split(item, ',');
      if (uv.size() != 2) throw InvalidArgument("explicit band entries are u,v pairs");
      b.indices.push_back(
          {detail::parse_number<std::size_t>(uv[0], "row"), detail::parse_number<std::size_t>(uv[1], "col")});
    }
    return b;
  }
  throw InvalidArgument("unknown band spec '" + std::string(text) + "'");
}

}  // namespace dqup

#pragma once

/**
 * @file serialize.hpp
 * @brief JSON and CSV forms of signals, supports, reports and experiment configs.
 *
 * Signal JSON:  {"rows": M, "cols": N, "data": [[w,x,y,z], ...]}   (row-major)
 * Signal CSV:   one line per matrix row, one "w+xi+yj+zk" cell per entry.
 * Support JSON: [[row, col], ...] in lexicographic order.
 *
 * Reals are written with round-trip precision. An infinite PSNR is written as
 * the string "inf".
 */

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "band.hpp"
#include "errors.hpp"
#include "image_experiment.hpp"
#include "json.hpp"
#include "metrics.hpp"
#include "qsignal.hpp"
#include "recovery.hpp"
#include "uncertainty.hpp"

namespace dqup {

using Json = nlohmann::ordered_json;

// ---- signals and supports --------------------------------------------------

inline Json to_json(const QSignal& s) {
  Json data = Json::array();
  for (const Quaternion& q : s.data()) data.push_back({q.w(), q.x(), q.y(), q.z()});
  return Json{{"rows", s.rows()}, {"cols", s.cols()}, {"data", std::move(data)}};
}

inline QSignal qsignal_from_json(const Json& j) {
  try {
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const Json& data = j.at("data");
    if (!data.is_array() || data.size() != rows * cols) throw MalformedFile("signal data must hold rows*cols entries");
    std::vector<Quaternion> q;
    q.reserve(data.size());
    for (const Json& e : data) {
      if (!e.is_array() || e.size() != 4) throw MalformedFile("signal entries are [w,x,y,z]");
      q.emplace_back(e[0].get<double>(), e[1].get<double>(), e[2].get<double>(), e[3].get<double>());
    }
    return QSignal(rows, cols, std::move(q));
  } catch (const nlohmann::json::exception& e) {
    throw MalformedFile(std::string("bad signal JSON: ") + e.what());
  }
}

inline std::string to_csv(const QSignal& s) {
  std::string out;
  for (std::size_t r = 0; r < s.rows(); ++r) {
    for (std::size_t c = 0; c < s.cols(); ++c) {
      if (c) out += ',';
      out += to_string(s(r, c));
    }
    out += '\n';
  }
  return out;
}

inline QSignal qsignal_from_csv(const std::string& text) {
  std::vector<std::vector<Quaternion>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<Quaternion> row;
    for (std::string_view cell : detail::split(line, ',')) row.push_back(parse_quaternion(cell));
    if (!rows.empty() && row.size() != rows.front().size()) throw MalformedFile("ragged signal CSV");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw MalformedFile("empty signal CSV");
  std::vector<Quaternion> flat;
  for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return QSignal(rows.size(), rows.front().size(), std::move(flat));
}

inline Json to_json(const Support& s) {
  Json out = Json::array();
  for (const Index& e : s.entries()) out.push_back({e.row, e.col});
  return out;
}

inline std::string support_text(const Support& s) {
  std::string out;
  for (const Index& e : s.entries()) {
    if (!out.empty()) out += ';';
    out += std::to_string(e.row) + ':' + std::to_string(e.col);
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedFile("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedFile("bad JSON in " + what + ": " + e.what());
  }
}

/// Loads a signal from .json or .csv (by extension).
inline QSignal load_signal(const std::string& path) {
  const std::string text = read_text_file(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return qsignal_from_csv(text);
  return qsignal_from_json(parse_json_text(text, path));
}

// ---- reports ---------------------------------------------------------------

inline Json number_or_inf(double v) { return std::isinf(v) ? Json("inf") : Json(v); }

inline Json to_json(const UncertaintyReport& r) {
  return Json{{"rows", r.rows},
              {"cols", r.cols},
              {"n_time", r.n_time},
              {"n_freq", r.n_freq},
              {"product", r.product},
              {"sum", r.sum},
              {"product_bound_holds", r.product_bound_holds},
              {"sum_bound_holds", r.sum_bound_holds},
              {"tolerance", r.tolerance}};
}

inline Json to_json(const VerifyResult& v) {
  Json out{{"holds", v.holds}, {"supports_checked", v.supports_checked}, {"signals_checked", v.signals_checked}};
  if (v.counterexample) {
    out["counterexample"] = Json{{"support", to_json(v.counterexample->support)},
                                 {"signal", to_json(v.counterexample->signal)},
                                 {"report", to_json(v.counterexample->report)}};
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

inline Json to_json(const WindowCheckReport& r) {
  Json out{{"holds", r.holds},
           {"branch", r.branch == WindowBranch::square ? "square" : "strip"},
           {"n_time", r.n_time},
           {"window_rows", r.window_rows},
           {"window_cols", r.window_cols},
           {"required_nonzeros", r.required_nonzeros},
           {"windows_checked", r.windows_checked}};
  out["failing_anchor"] = r.failing_anchor ? Json{r.failing_anchor->row, r.failing_anchor->col} : Json(nullptr);
  return out;
}

inline Json to_json(const RecoveryResult& r) {
  return Json{{"signal", to_json(r.signal)},
              {"support", to_json(r.support)},
              {"residual", r.residual},
              {"unique", r.unique},
              {"candidates_searched", r.candidates_searched},
              {"degenerate", r.degenerate}};
}

inline Json to_json(const QualityReport& q) {
  return Json{{"PSNR", number_or_inf(q.psnr)}, {"SSIM", q.ssim}, {"MSE", q.mse}, {"channels", q.channels}};
}

inline Json to_json(const TrialRecord& t) {
  return Json{{"seed", t.seed},
              {"truth_support", support_text(t.truth_support)},
              {"support", support_text(t.support)},
              {"residual", t.residual},
              {"error", t.error},
              {"bound", t.bound},
              {"ratio", t.ratio},
              {"within_bound", t.within_bound}};
}

inline Json to_json(const ExperimentRecord& e) {
  Json trials = Json::array();
  for (const TrialRecord& t : e.trials) trials.push_back(to_json(t));
  return Json{{"rows", e.rows},
              {"cols", e.cols},
              {"sparsity", e.sparsity},
              {"lambda_size", e.lambda_size},
              {"eps", e.eps},
              {"seed", e.seed},
              {"max_ratio", e.max_ratio},
              {"max_error", e.max_error},
              {"violations", e.violations},
              {"trials", std::move(trials)}};
}

/// One row per trial: seed, support, residual, error, bound, ratio.
inline std::string experiment_csv(const ExperimentRecord& e) {
  std::string out = "seed,support,residual,error,bound,ratio\n";
  char buf[256];
  for (const TrialRecord& t : e.trials) {
    std::snprintf(buf, sizeof buf, "%llu,%s,%.17g,%.17g,%.17g,%.17g\n", static_cast<unsigned long long>(t.seed),
                  support_text(t.support).c_str(), t.residual, t.error, t.bound, t.ratio);
    out += buf;
  }
  return out;
}

inline Json to_json(const ImageExperimentReport& r) {
  return Json{{"rows", r.rows},
              {"cols", r.cols},
              {"band_size", r.band_size},
              {"uncertainty", to_json(r.uncertainty)},
              {"quality", to_json(r.quality)},
              {"lossless", r.lossless},
              {"real_part_discarded", r.real_part_discarded}};
}

// ---- experiment configuration ---------------------------------------------

/**
 * {"rows", "cols", "sparsity", "band", "eps", "trials", "seed", "tolerance",
 *  "search_budget", "observed", "signal"}
 *
 * "band" is either a band spec string (see parse_band_spec) or an object
 * {"type": "explicit", "indices": [[u,v],...]} | {"type": "lowpass", "radius": r}
 * | {"type": "random", "size": b, "seed": s} | {"type": "full"}.
 * "observed" / "signal" are optional signal objects.
 */
struct ExperimentConfig {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t sparsity = 1;
  BandSpec band = FullBand{};
  double eps = 0.0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  std::uint64_t search_budget = RecoveryOptions{}.search_budget;
  std::optional<QSignal> observed;
  std::optional<QSignal> signal;
};

inline BandSpec band_spec_from_json(const Json& j) {
  if (j.is_string()) return parse_band_spec(j.get<std::string>());
  const std::string type = j.at("type").get<std::string>();
  if (type == "full") return FullBand{};
  if (type == "lowpass") return LowpassBand{j.at("radius").get<double>()};
  if (type == "random") return RandomBand{j.at("size").get<std::size_t>(), j.at("seed").get<std::uint64_t>()};
  if (type == "explicit") {
    ExplicitBand b;
    for (const Json& e : j.at("indices")) b.indices.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
    return b;
  }
  throw InvalidArgument("unknown band type '" + type + "'");
}

inline ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig c;
  try {
    auto positive = [&](const char* key, std::size_t& out, bool required) {
      if (!j.contains(key)) {
        if (required) throw InvalidArgument(std::string("config is missing '") + key + "'");
        return;
      }
      const long long v = j.at(key).get<long long>();
      if (v <= 0) throw InvalidArgument(std::string("config field '") + key + "' must be positive");
      out = static_cast<std::size_t>(v);
    };
    positive("rows", c.rows, true);
    positive("cols", c.cols, true);
    positive("sparsity", c.sparsity, true);
    positive("trials", c.trials, false);
    if (j.contains("band")) c.band = band_spec_from_json(j.at("band"));
    if (j.contains("eps")) c.eps = j.at("eps").get<double>();
    if (c.eps < 0.0) throw InvalidArgument("config field 'eps' must be nonnegative");
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
    if (j.contains("search_budget")) c.search_budget = j.at("search_budget").get<std::uint64_t>();
    if (j.contains("observed")) c.observed = qsignal_from_json(j.at("observed"));
    if (j.contains("signal")) c.signal = qsignal_from_json(j.at("signal"));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad experiment config: ") + e.what());
  }
  if (c.sparsity > c.rows * c.cols) throw InvalidArgument("sparsity exceeds rows*cols");
  for (const auto* s : {&c.observed, &c.signal})
    if (*s && ((*s)->rows() != c.rows || (*s)->cols() != c.cols))
      throw ShapeMismatch("config signal does not match rows x cols");
  // Resolving here surfaces out-of-range explicit bands as config errors.
  (void)resolve_band(c.band, c.rows, c.cols);
  return c;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  return experiment_config_from_json(parse_json_text(read_text_file(path), path));
}

}  // namespace dqup

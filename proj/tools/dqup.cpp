// dqup: command-line front end for the quaternion transform, uncertainty
// audits, sparse recovery and image band-limiting experiments.
//
// Exit codes: 0 success, 2 usage / input error, 3 verification counterexample,
// 4 numeric failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dqup/dqup.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCounterexample = 3;
constexpr int kExitNumeric = 4;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dqup::InvalidArgument("cannot write " + path);
  out << text;
}

void emit(const dqup::Json& j) { std::cout << j.dump(2) << '\n'; }

std::string bool_text(bool b) { return b ? "true" : "false"; }

int run_transform(const std::string& input, bool inverse, const std::string& csv) {
  const dqup::QSignal f = dqup::load_signal(input);
  const dqup::QSignal g = inverse ? dqup::idqft(f) : dqup::dqft(f);
  emit(dqup::to_json(g));
  if (!csv.empty()) write_file(csv, dqup::to_csv(g));
  return 0;
}

int run_audit(const std::string& input, std::optional<double> tol, const std::string& csv) {
  const dqup::QSignal f = dqup::load_signal(input);
  const dqup::UncertaintyReport r = tol ? dqup::audit(f, *tol) : dqup::audit(f);
  emit(dqup::to_json(r));
  if (!csv.empty()) {
    write_file(csv, "rows,cols,n_time,n_freq,product,sum,product_bound_holds,sum_bound_holds\n" +
                        std::to_string(r.rows) + ',' + std::to_string(r.cols) + ',' + std::to_string(r.n_time) + ',' +
                        std::to_string(r.n_freq) + ',' + std::to_string(r.product) + ',' + std::to_string(r.sum) +
                        ',' + bool_text(r.product_bound_holds) + ',' + bool_text(r.sum_bound_holds) + '\n');
  }
  return r.product_bound_holds ? 0 : kExitCounterexample;
}

int run_verify(std::size_t rows, std::size_t cols, std::size_t trials, std::uint64_t seed, const std::string& csv) {
  const dqup::VerifyResult v = dqup::exhaustive_verify(rows, cols, trials, seed);
  emit(dqup::to_json(v));
  if (!csv.empty())
    write_file(csv, "rows,cols,holds,supports_checked,signals_checked\n" + std::to_string(rows) + ',' +
                        std::to_string(cols) + ',' + bool_text(v.holds) + ',' + std::to_string(v.supports_checked) +
                        ',' + std::to_string(v.signals_checked) + '\n');
  return v.holds ? 0 : kExitCounterexample;
}

std::vector<dqup::GoldenCheck> select_checks(const std::string& section,
                                             const std::vector<std::pair<std::size_t, std::size_t>>& combs,
                                             std::size_t trials, std::uint64_t seed) {
  if (section == "all") return dqup::all_golden_checks(combs, trials, seed);
  std::vector<dqup::GoldenCheck> out;
  auto append = [&](std::vector<dqup::GoldenCheck> v) { out.insert(out.end(), v.begin(), v.end()); };
  if (section == "delta")
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {4, 4}}) append(dqup::delta_checks(m, n));
  if (section == "comb")
    for (auto [k, l] : combs) append(dqup::comb_checks(k, l));
  if (section == "matrix") append(dqup::matrix_form_checks());
  if (section == "case-tables") {
    append(dqup::case_table_checks(2, 2, trials, seed));
    append(dqup::case_table_checks(2, 3, trials, seed));
  }
  return out;
}

int run_examples(const std::string& section, const std::vector<std::pair<std::size_t, std::size_t>>& combs,
                 std::size_t trials, std::uint64_t seed, const std::string& csv) {
  const auto checks = select_checks(section, combs, trials, seed);
  dqup::Json list = dqup::Json::array();
  std::size_t failed = 0;
  std::string table = "name,expected,observed,pass\n";
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"pass", c.pass}});
    if (!c.pass) ++failed;
    table += '"' + c.name + "\",\"" + c.expected + "\",\"" + c.observed + "\"," + bool_text(c.pass) + '\n';
    std::cerr << (c.pass ? "PASS  " : "FAIL  ") << c.name << ": expected " << c.expected << ", observed "
              << c.observed << '\n';
  }
  emit({{"checks", std::move(list)}, {"passed", checks.size() - failed}, {"failed", failed}});
  if (!csv.empty()) write_file(csv, table);
  return failed == 0 ? 0 : kExitCounterexample;
}

int run_recover(const std::string& config_path, unsigned workers, const std::string& csv) {
  const dqup::ExperimentConfig cfg = dqup::load_experiment_config(config_path);
  const dqup::Support band = dqup::resolve_band(cfg.band, cfg.rows, cfg.cols);
  std::optional<dqup::QSignal> truth = cfg.signal;
  dqup::QSignal observed(cfg.rows, cfg.cols);
  if (cfg.observed) {
    observed = *cfg.observed;
  } else {
    dqup::Rng rng(cfg.seed);
    if (!truth) truth = dqup::random_sparse_signal(cfg.rows, cfg.cols, cfg.sparsity, rng);
    observed = dqup::observe(*truth, band);
    if (cfg.eps > 0.0) observed = observed + dqup::band_noise(band, cfg.eps, rng);
  }
  dqup::RecoveryOptions opts;
  opts.search_budget = cfg.search_budget;
  opts.workers = workers;
  if (cfg.tolerance) opts.tie_tolerance = *cfg.tolerance;
  const dqup::RecoveryResult res =
      dqup::recover(dqup::RecoveryProblem{cfg.rows, cfg.cols, band, observed, cfg.sparsity, cfg.eps}, opts);
  dqup::Json out = dqup::to_json(res);
  if (truth && !cfg.observed) {
    out["truth"] = dqup::to_json(*truth);
    out["error"] = dqup::distance(*truth, res.signal);
  }
  emit(out);
  if (!csv.empty())
    write_file(csv, "support,residual,unique,candidates_searched,degenerate\n" + dqup::support_text(res.support) +
                        ',' + std::to_string(res.residual) + ',' + bool_text(res.unique) + ',' +
                        std::to_string(res.candidates_searched) + ',' + bool_text(res.degenerate) + '\n');
  return 0;
}

int run_experiment(const std::string& config_path, unsigned workers, const std::string& csv) {
  const dqup::ExperimentConfig cfg = dqup::load_experiment_config(config_path);
  const dqup::Support band = dqup::resolve_band(cfg.band, cfg.rows, cfg.cols);
  dqup::RecoveryOptions opts;
  opts.search_budget = cfg.search_budget;
  opts.workers = workers;
  if (cfg.tolerance) opts.tie_tolerance = *cfg.tolerance;
  const dqup::ExperimentRecord rec =
      dqup::noisy_recovery_experiment(cfg.rows, cfg.cols, cfg.sparsity, band, cfg.eps, cfg.trials, cfg.seed, opts);
  emit(dqup::to_json(rec));
  if (!csv.empty()) write_file(csv, dqup::experiment_csv(rec));
  return rec.violations == 0 ? 0 : kExitCounterexample;
}

int run_image_experiment(const std::string& input, const std::string& band_spec, const std::string& output,
                         const std::string& csv) {
  const dqup::ColorImage img = dqup::load_ppm(input);
  const dqup::Support band = dqup::resolve_band(dqup::parse_band_spec(band_spec), img.height, img.width);
  const dqup::ImageExperimentReport rep = dqup::image_band_experiment(img, band);
  emit(dqup::to_json(rep));
  if (!output.empty()) dqup::save_ppm(output, rep.reconstruction);
  if (!csv.empty()) {
    const auto& u = rep.uncertainty;
    char psnr[40];
    std::snprintf(psnr, sizeof psnr, "%.6f", rep.quality.psnr);
    write_file(csv, "image_size,n_time,n_freq,uncertainty_product,MN,bound_holds,PSNR,SSIM\n" +
                        std::to_string(rep.rows) + "x" + std::to_string(rep.cols) + ',' + std::to_string(u.n_time) +
                        ',' + std::to_string(u.n_freq) + ',' + std::to_string(u.product) + ',' +
                        std::to_string(rep.rows * rep.cols) + ',' + bool_text(u.product_bound_holds) + ',' + psnr +
                        ',' + std::to_string(rep.quality.ssim) + '\n');
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sided discrete quaternion Fourier transform: uncertainty audits and sparse recovery"};
  app.require_subcommand(1);
  std::string csv;
  app.add_option("--csv", csv, "Also write a CSV table to this path");

  std::string input;
  bool inverse = false;
  auto* transform = app.add_subcommand("transform", "Forward or inverse transform of a signal file (.json/.csv)");
  transform->add_option("--input", input, "Signal file")->required();
  transform->add_flag("--inverse", inverse, "Apply the inverse transform");
  transform->add_option("--csv", csv, "Also write the result as CSV");

  std::optional<double> tol;
  auto* audit = app.add_subcommand("audit", "Support counts of a signal and its spectrum");
  audit->add_option("--input", input, "Signal file")->required();
  audit->add_option("--tol", tol, "Nonzero threshold (default 1e-9*max(1,|f|))")->check(CLI::NonNegativeNumber);
  audit->add_option("--csv", csv, "Also write the report as CSV");

  std::size_t rows = 0, cols = 0, trials = 0;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Audit random signals on every support of a small grid");
  verify->add_option("--rows", rows, "M")->required()->check(CLI::PositiveNumber);
  verify->add_option("--cols", cols, "N")->required()->check(CLI::PositiveNumber);
  verify->add_option("--trials", trials, "Signals per support")->required();
  verify->add_option("--seed", seed, "RNG seed")->required();
  verify->add_option("--csv", csv, "Also write a CSV summary");

  std::vector<std::size_t> comb_k{2, 2, 3}, comb_l{2, 3, 2};
  std::size_t example_trials = 20;
  std::uint64_t example_seed = 1;
  std::string section = "all";
  auto* examples = app.add_subcommand("examples", "Regenerate worked examples and check their known values");
  examples->add_option("--section", section, "Which group of checks to run")
      ->check(CLI::IsMember({"all", "delta", "comb", "matrix", "case-tables"}));
  examples->add_option("--k", comb_k, "Comb factors k (paired with --l)");
  examples->add_option("--l", comb_l, "Comb factors l (paired with --k)");
  examples->add_option("--trials", example_trials, "Random draws per candidate in the case tables");
  examples->add_option("--seed", example_seed, "RNG seed for the case tables");
  examples->add_option("--csv", csv, "Also write the checks as CSV");

  std::string config;
  unsigned workers = 0;
  auto* recover = app.add_subcommand("recover", "Recover a sparse signal from band-limited observations");
  recover->add_option("--config", config, "Experiment config JSON")->required();
  recover->add_option("--workers", workers, "Worker threads (0 = hardware)");
  recover->add_option("--csv", csv, "Also write a CSV summary");

  auto* experiment = app.add_subcommand("experiment", "Noisy recovery trials against the stability bound");
  experiment->add_option("--config", config, "Experiment config JSON")->required();
  experiment->add_option("--workers", workers, "Worker threads (0 = hardware)");
  experiment->add_option("--csv", csv, "Write per-trial CSV");

  std::string band_spec, output;
  auto* image = app.add_subcommand("image-experiment", "Band-limit a PPM image and score the reconstruction");
  image->add_option("--input", input, "Binary PPM (P6) image")->required();
  image->add_option("--band", band_spec, "full | lowpass:R | random:B:SEED | explicit:u,v;u,v")->required();
  image->add_option("--output", output, "Write the quantized reconstruction as PPM");
  image->add_option("--csv", csv, "Also write a one-row CSV summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*transform) return run_transform(input, inverse, csv);
    if (*audit) return run_audit(input, tol, csv);
    if (*verify) return run_verify(rows, cols, trials, seed, csv);
    if (*examples) {
      if (comb_k.size() != comb_l.size()) throw dqup::InvalidArgument("--k and --l need the same number of values");
      std::vector<std::pair<std::size_t, std::size_t>> combs;
      for (std::size_t n = 0; n < comb_k.size(); ++n) combs.emplace_back(comb_k[n], comb_l[n]);
      return run_examples(section, combs, example_trials, example_seed, csv);
    }
    if (*recover) return run_recover(config, workers, csv);
    if (*experiment) return run_experiment(config, workers, csv);
    if (*image) return run_image_experiment(input, band_spec, output, csv);
  } catch (const dqup::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const dqup::Error& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }
  return kExitUsage;
}

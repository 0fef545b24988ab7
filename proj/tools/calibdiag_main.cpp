// calibdiag: calibration diagnostics for probabilistic binary predictions.
//
// Subcommands:
//   cumulative   cumulative difference plot from a score/outcome CSV
//   reliability  binned reliability diagram with bootstrap uncertainty lines
//   simulate     generate a synthetic dataset with known true probabilities
//   figure-set   the full seven-panel diagnostic layout for a synthetic run

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "calib/commands.hpp"
#include "calib/error.hpp"
#include "calib/kernels.hpp"

namespace {

void add_family_options(CLI::App* cmd, calib::RunConfig& cfg) {
  cmd->add_option("--family", cfg.family,
                  "deviation family: calibrated, linear, bump-notch, oscillation")
      ->capture_default_str();
  cmd->add_option("--score-family", cfg.score_family,
                  "score family: equispaced, dense-near-0, dense-near-1")
      ->capture_default_str();
  cmd->add_option("--n", cfg.n, "number of samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--linear-scale", cfg.params.linear_scale,
                  "linear family deviation scale")
      ->capture_default_str();
  cmd->add_option("--bump-height", cfg.params.bump_height,
                  "bump-notch family bump height")
      ->capture_default_str();
  cmd->add_option("--bump-sigma", cfg.params.bump_sigma,
                  "bump-notch family bump width (sigma)")
      ->capture_default_str();
  cmd->add_option("--notch-halfwidth", cfg.params.notch_halfwidth,
                  "bump-notch family notch half-width around score 0.25")
      ->capture_default_str();
  cmd->add_option("--osc-amplitude", cfg.params.osc_amplitude,
                  "oscillation family amplitude")
      ->capture_default_str();
  cmd->add_option("--osc-frequency", cfg.params.osc_frequency,
                  "oscillation family cycles over [0,1]")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calibration diagnostics for probabilistic binary predictions"};
  app.require_subcommand(1);
  app.fallthrough();  // parent options (--simd) may follow the subcommand

  calib::RunConfig cfg;
  std::string simd = "auto";
  app.add_option("--simd", simd, "kernel backend: auto, scalar, avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
      ->capture_default_str();

  const std::map<std::string, calib::BinningKind> scheme_names{
      {"equal-width", calib::BinningKind::equal_width},
      {"equal-count", calib::BinningKind::equal_count}};

  CLI::App* cumulative =
      app.add_subcommand("cumulative", "cumulative difference plot from a CSV");
  cumulative->add_option("--input", cfg.input_path, "input CSV (score,outcome)")
      ->required();
  cumulative->add_option("--out", cfg.output_dir, "output directory")
      ->capture_default_str();
  cumulative->add_option("--seed", cfg.seed, "tie-randomization seed")
      ->capture_default_str();
  cumulative->add_option("--title", cfg.title, "plot title");

  CLI::App* reliability =
      app.add_subcommand("reliability", "binned reliability diagram from a CSV");
  reliability->add_option("--input", cfg.input_path, "input CSV (score,outcome)")
      ->required();
  reliability->add_option("--out", cfg.output_dir, "output directory")
      ->capture_default_str();
  reliability->add_option("--bins", cfg.bins, "number of bins")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  reliability
      ->add_option("--scheme", cfg.scheme, "bin-width policy: equal-width, equal-count")
      ->transform(CLI::CheckedTransformer(scheme_names))
      ->default_str("equal-width");
  reliability
      ->add_option("--bootstrap", cfg.bootstrap_replicates,
                   "bootstrap replicate lines (0 disables)")
      ->capture_default_str();
  reliability->add_option("--seed", cfg.seed, "seed for ties and bootstrap draws")
      ->capture_default_str();
  reliability->add_option("--title", cfg.title, "plot title");

  CLI::App* simulate =
      app.add_subcommand("simulate", "generate a synthetic dataset CSV");
  add_family_options(simulate, cfg);
  simulate->add_option("--seed", cfg.seed, "outcome-draw seed")->capture_default_str();
  simulate->add_option("--output", cfg.output_path, "output CSV path")
      ->default_str("<out>/simulated.csv");
  simulate->add_option("--out", cfg.output_dir, "output directory")
      ->capture_default_str();

  CLI::App* figure_set = app.add_subcommand(
      "figure-set", "seven-panel diagnostic figure layout for a synthetic run");
  add_family_options(figure_set, cfg);
  figure_set->add_option("--seed", cfg.seed, "seed for outcomes, ties and bootstrap")
      ->capture_default_str();
  figure_set->add_option("--out", cfg.output_dir, "output directory")
      ->capture_default_str();
  figure_set->add_option("--bins-fine", cfg.bins_fine, "finer diagram row bin count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  figure_set
      ->add_option("--bins-coarse", cfg.bins_coarse, "coarser diagram row bin count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  figure_set
      ->add_option("--bootstrap", cfg.bootstrap_replicates,
                   "bootstrap replicate lines per diagram (0 disables)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (simd == "scalar") {
    calib::kernels::force_isa(calib::kernels::Isa::scalar);
  } else if (simd == "avx2") {
    if (!calib::kernels::avx2_available()) {
      std::cerr << "error: AVX2 requested but not available on this CPU\n";
      return 2;
    }
    calib::kernels::force_isa(calib::kernels::Isa::avx2);
  }

  try {
    if (cumulative->parsed()) {
      calib::run_cumulative(cfg, std::cout);
    } else if (reliability->parsed()) {
      calib::run_reliability(cfg, std::cout);
    } else if (simulate->parsed()) {
      calib::run_simulate(cfg, std::cout);
    } else if (figure_set->parsed()) {
      calib::run_figure_set(cfg, std::cout);
    }
  } catch (const calib::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

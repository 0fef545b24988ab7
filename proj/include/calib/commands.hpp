#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "calib/binning.hpp"
#include "calib/synthetic.hpp"

namespace calib {

// Resolved command-line configuration. Defaults here are the documented CLI
// defaults: 20/10 bins for the fine/coarse diagram rows, 20 bootstrap
// replicates, seed 0.
struct RunConfig {
  std::string input_path;
  std::string output_dir = ".";
  std::string output_path;  // simulate: target CSV file

  std::size_t bins = 10;
  BinningKind scheme = BinningKind::equal_width;
  std::size_t bins_fine = 20;
  std::size_t bins_coarse = 10;
  std::size_t bootstrap_replicates = 20;
  std::uint64_t seed = 0;

  std::string score_family = "equispaced";
  std::string family = "calibrated";
  std::size_t n = 1000;
  DeviationParams params;

  std::string title;  // optional plot title override
};

// Each command writes its outputs, appends a short summary to `out`, and
// throws Error on failure; files already written by the failing invocation
// are removed. All randomness is derived from config.seed up front:
//   slot 0 -> outcome draws, slot 1 -> tie randomization,
//   slot 2 + panel -> bootstrap ensembles (figure-set panel order).

// plot + data CSV for the cumulative difference curve; prints n, mean score,
// mean outcome, D_n, triangle half-height and the full-range secant slope.
void run_cumulative(const RunConfig& config, std::ostream& out);

// reliability diagram plot with optional bootstrap replicate lines, plus
// diagram CSV (and ensemble CSV when replicates > 0).
void run_reliability(const RunConfig& config, std::ostream& out);

// synthetic dataset CSV with the true_prob column.
void run_simulate(const RunConfig& config, std::ostream& out);

// the seven-panel figure layout as seven SVG files plus sidecar CSVs and a
// figure_set.json manifest mapping panel roles to paths.
void run_figure_set(const RunConfig& config, std::ostream& out);

}  // namespace calib

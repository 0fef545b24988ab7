#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "calib/bootstrap.hpp"
#include "calib/cumulative.hpp"
#include "calib/sample.hpp"

namespace calib::csv {

// Parsed dataset file. true_probs is non-empty only when the file carries a
// true_prob column (synthetic data with known ground truth).
struct Dataset {
  std::vector<PairedSample> samples;
  std::vector<double> true_probs;

  bool has_true_probs() const noexcept { return !true_probs.empty(); }
};

// Dataset files: UTF-8, comma-separated, optional header `score,outcome`
// (or `score,outcome,true_prob`), `#` lines skipped as comments. Scores are
// decimal text; outcomes 0 or 1. Any malformed record throws an Error naming
// the 1-based file line and the offending value; a file with no records is
// an error too.
Dataset parse_samples(std::string_view text, const std::string& origin);
Dataset load_samples(const std::string& path);

// Scores and probabilities are written with 17 significant digits, so
// parse(format(x)) reproduces every value bit-exactly.
std::string format_samples(std::span<const PairedSample> samples,
                           std::span<const double> true_probs = {});

// Curve files: a `# triangle_half_height=<...>` comment line, then
// `k,k_over_n,score,diff` rows for k = 1..n.
std::string format_curve(const CumulativeCurve& curve);
CumulativeCurve parse_curve(std::string_view text, const std::string& origin);

// `bin,score_lo,score_hi,count,mean_score,success_rate`, bins 1-based.
std::string format_diagram(const ReliabilityDiagram& diagram);

// `replicate,bin,mean_score,success_rate`, both indices 1-based.
std::string format_ensemble(const BootstrapEnsemble& ensemble);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace calib::csv

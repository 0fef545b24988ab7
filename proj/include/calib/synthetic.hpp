#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "calib/sample.hpp"

namespace calib {

// Score ladders P_1 < ... < P_n used by the synthetic experiments:
//   equispaced:     P_k = (k - 0.5) / n
//   dense-near-0:   P_k = ((k - 0.5) / n)^2
//   dense-near-1:   P_k = sqrt((k - 0.5) / n)
enum class ScoreFamily { equispaced, dense_near_zero, dense_near_one };

// How the actual success probabilities deviate from the scores:
//   calibrated:   no deviation
//   linear:       s * (2(k - 0.5)/n - 1), odd around the middle index
//   bump-notch:   Gaussian bump of height h at score 0.25, zeroed on the
//                 notch |P - 0.25| < w
//   oscillation:  a * sin(2*pi*f*P)
// Every deviation is added to the score and clipped to [0, 1].
enum class DeviationFamily { calibrated, linear, bump_notch, oscillation };

struct DeviationParams {
  double linear_scale = 0.1;      // s
  double bump_height = 0.1;       // h
  double bump_sigma = 0.1;        // sigma of the bump
  double notch_halfwidth = 0.02;  // w
  double osc_amplitude = 0.06;    // a
  double osc_frequency = 4.0;     // f, cycles over score range [0, 1]
};

// Ground truth for synthetic data: the scores handed to the diagnostics and
// the actual Bernoulli success probabilities behind the outcomes.
struct TrueModel {
  std::size_t n = 0;
  std::vector<double> scores;      // strictly increasing, in (0, 1) or [0, 1]
  std::vector<double> true_probs;  // in [0, 1]
  std::string family_name;
  DeviationParams params;
};

std::vector<double> score_family(ScoreFamily family, std::size_t n);

std::vector<double> deviation_family(DeviationFamily family,
                                     std::span<const double> scores,
                                     const DeviationParams& params = {});

TrueModel make_model(ScoreFamily scores, DeviationFamily deviation,
                     std::size_t n, const DeviationParams& params = {});

// outcomes[k] = 1 with probability true_probs[k], independently; bit-stable
// for a fixed (model, seed) on every platform (see rng::bernoulli).
std::vector<double> draw_outcomes(const TrueModel& model, std::uint64_t seed);

// Pair model scores with drawn outcomes. Model scores are already strictly
// increasing, so the sort is the identity for any tie seed.
SortedDataset to_dataset(const TrueModel& model, std::span<const double> outcomes,
                         std::uint64_t tie_seed);

// Rebuild a model from stored columns (e.g. a simulate output reloaded from
// its CSV, whose true_prob column pairs with the scores by row). Scores must
// be strictly increasing.
TrueModel model_from_columns(std::span<const double> scores,
                             std::span<const double> true_probs,
                             std::string family_name = "from-file");

// CLI spellings: "equispaced", "dense-near-0", "dense-near-1" and
// "calibrated", "linear", "bump-notch", "oscillation". Unknown names throw.
ScoreFamily score_family_from_name(std::string_view name);
DeviationFamily deviation_family_from_name(std::string_view name);
std::string_view name_of(ScoreFamily family);
std::string_view name_of(DeviationFamily family);

}  // namespace calib

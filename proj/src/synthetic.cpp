#include "calib/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "calib/error.hpp"
#include "calib/kernels.hpp"

namespace calib {

std::vector<double> score_family(ScoreFamily family, std::size_t n) {
  if (n == 0) throw Error("score family needs n >= 1");
  std::vector<double> scores(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * inv_n;
    switch (family) {
      case ScoreFamily::equispaced:
        scores[i] = t;
        break;
      case ScoreFamily::dense_near_zero:
        scores[i] = t * t;
        break;
      case ScoreFamily::dense_near_one:
        scores[i] = std::sqrt(t);
        break;
    }
  }
  return scores;
}

std::vector<double> deviation_family(DeviationFamily family,
                                     std::span<const double> scores,
                                     const DeviationParams& params) {
  const std::size_t n = scores.size();
  std::vector<double> probs(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = scores[i];
    double dev = 0.0;
    switch (family) {
      case DeviationFamily::calibrated:
        break;
      case DeviationFamily::linear:
        // odd in the index: zero at k = n/2 + 0.5, so the deviations over
        // k = 1..n sum to zero before clipping
        dev = params.linear_scale * (2.0 * (static_cast<double>(i) + 0.5) * inv_n - 1.0);
        break;
      case DeviationFamily::bump_notch: {
        const double d = p - 0.25;
        if (std::fabs(d) < params.notch_halfwidth) {
          dev = 0.0;  // perfectly calibrated notch
        } else {
          const double sig = params.bump_sigma;
          dev = params.bump_height * std::exp(-(d * d) / (2.0 * sig * sig));
        }
        break;
      }
      case DeviationFamily::oscillation:
        dev = params.osc_amplitude *
              std::sin(2.0 * std::numbers::pi * params.osc_frequency * p);
        break;
    }
    probs[i] = std::clamp(p + dev, 0.0, 1.0);
  }
  return probs;
}

TrueModel make_model(ScoreFamily scores, DeviationFamily deviation,
                     std::size_t n, const DeviationParams& params) {
  TrueModel model;
  model.n = n;
  model.scores = score_family(scores, n);
  model.true_probs = deviation_family(deviation, model.scores, params);
  model.family_name = std::string(name_of(deviation)) + "/" + std::string(name_of(scores));
  model.params = params;
  return model;
}

std::vector<double> draw_outcomes(const TrueModel& model, std::uint64_t seed) {
  std::vector<double> outcomes(model.true_probs.size());
  kernels::bernoulli_fill(seed, model.true_probs, outcomes);
  return outcomes;
}

SortedDataset to_dataset(const TrueModel& model, std::span<const double> outcomes,
                         std::uint64_t tie_seed) {
  if (outcomes.size() != model.scores.size()) {
    throw Error("outcome count does not match model size");
  }
  for (std::size_t i = 1; i < model.scores.size(); ++i) {
    if (!(model.scores[i] > model.scores[i - 1])) {
      throw Error("model scores must be strictly increasing");
    }
  }
  SortedDataset ds;
  ds.tie_seed = tie_seed;
  ds.scores = model.scores;
  ds.outcomes.assign(outcomes.begin(), outcomes.end());
  return ds;
}

TrueModel model_from_columns(std::span<const double> scores,
                             std::span<const double> true_probs,
                             std::string family_name) {
  if (scores.empty() || scores.size() != true_probs.size()) {
    throw Error("model columns must be non-empty and equal in length");
  }
  TrueModel model;
  model.n = scores.size();
  model.scores.assign(scores.begin(), scores.end());
  model.true_probs.assign(true_probs.begin(), true_probs.end());
  model.family_name = std::move(family_name);
  for (std::size_t i = 0; i < model.n; ++i) {
    if (!(model.true_probs[i] >= 0.0 && model.true_probs[i] <= 1.0)) {
      throw Error("true probability outside [0,1]");
    }
    if (i > 0 && !(model.scores[i] > model.scores[i - 1])) {
      throw Error("model scores must be strictly increasing");
    }
  }
  return model;
}

ScoreFamily score_family_from_name(std::string_view name) {
  if (name == "equispaced") return ScoreFamily::equispaced;
  if (name == "dense-near-0") return ScoreFamily::dense_near_zero;
  if (name == "dense-near-1") return ScoreFamily::dense_near_one;
  throw Error("unknown score family '" + std::string(name) +
              "' (expected equispaced, dense-near-0 or dense-near-1)");
}

DeviationFamily deviation_family_from_name(std::string_view name) {
  if (name == "calibrated") return DeviationFamily::calibrated;
  if (name == "linear") return DeviationFamily::linear;
  if (name == "bump-notch") return DeviationFamily::bump_notch;
  if (name == "oscillation") return DeviationFamily::oscillation;
  throw Error("unknown deviation family '" + std::string(name) +
              "' (expected calibrated, linear, bump-notch or oscillation)");
}

std::string_view name_of(ScoreFamily family) {
  switch (family) {
    case ScoreFamily::equispaced: return "equispaced";
    case ScoreFamily::dense_near_zero: return "dense-near-0";
    case ScoreFamily::dense_near_one: return "dense-near-1";
  }
  return "?";
}

std::string_view name_of(DeviationFamily family) {
  switch (family) {
    case DeviationFamily::calibrated: return "calibrated";
    case DeviationFamily::linear: return "linear";
    case DeviationFamily::bump_notch: return "bump-notch";
    case DeviationFamily::oscillation: return "oscillation";
  }
  return "?";
}

}  // namespace calib

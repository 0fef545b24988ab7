#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "calib/sample.hpp"

namespace calib {

struct TrueModel;

// The cumulative difference curve D_k = E_k - F_k over the score-sorted
// samples, where F_k is the running mean of the scores and E_k the running
// mean of the outcomes. Under perfect calibration D_k is a driftless random
// walk whose final deviation has standard deviation triangle_half_height;
// systematic miscalibration shows up as secant slope.
struct CumulativeCurve {
  std::vector<double> abscissas;       // k/n for k = 1..n
  std::vector<double> ordinates;       // D_k
  std::vector<double> score_at_index;  // sorted scores, for lower-axis labels
  double triangle_half_height = 0.0;   // sqrt(sum P_k (1 - P_k)) / n

  std::size_t size() const noexcept { return ordinates.size(); }
};

// Secant of the curve over the step range (k_lo, k_hi]: the average
// per-sample miscalibration over those steps.
struct SlopeEstimate {
  std::size_t k_lo = 0;   // 0 anchors the secant at the origin (D_0 = 0)
  std::size_t k_hi = 0;   // 1-based, inclusive
  double score_lo = 0.0;  // score at the first step in the range
  double score_hi = 0.0;
  double slope = 0.0;     // (D_hi - D_lo) * n / (k_hi - k_lo), in [-1, 1]
};

// (F(p), E(p)): the mean over all n samples of score and outcome restricted
// to samples with score <= p. p below the smallest score gives (0, 0); p at
// or above the largest gives (mean score, mean outcome).
std::pair<double, double> cumulative_at(const SortedDataset& dataset, double p);

// One O(n) pass; ordinates use compensated summation so the telescoping
// identity D_n = mean(outcome) - mean(score) holds to ~1e-12 even at n = 1e6.
CumulativeCurve cumulative_curve(const SortedDataset& dataset);

// Requires 0 <= k_lo < k_hi <= n; k_lo = 0 measures from the origin, which
// makes the full-range slope equal to D_n.
SlopeEstimate secant_slope(const CumulativeCurve& curve, std::size_t k_lo,
                           std::size_t k_hi);

// Exact expectation of the curve under the model: ordinate k is the mean of
// (true_prob - score) over the first k samples. The triangle half-height is
// computed from the scores exactly as in the sampled curve.
CumulativeCurve noiseless_curve(const TrueModel& model);

}  // namespace calib

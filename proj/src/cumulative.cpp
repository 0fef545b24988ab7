#include "calib/cumulative.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "calib/error.hpp"
#include "calib/kernels.hpp"
#include "calib/synthetic.hpp"

namespace calib {

namespace {

CumulativeCurve curve_from_columns(std::span<const double> scores,
                                   std::span<const double> values) {
  const std::size_t n = scores.size();
  if (n == 0) throw Error("cumulative curve needs at least one sample");

  CumulativeCurve curve;
  curve.abscissas.resize(n);
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    curve.abscissas[k] = static_cast<double>(k + 1) / dn;
  }
  curve.ordinates.resize(n);
  kernels::prefix_scaled_diff(values, scores, 1.0 / dn, curve.ordinates);
  curve.score_at_index.assign(scores.begin(), scores.end());
  // compensation can leave a tiny negative residue when the sum is zero
  curve.triangle_half_height = std::sqrt(std::max(0.0, kernels::sum_pq(scores))) / dn;
  return curve;
}

}  // namespace

std::pair<double, double> cumulative_at(const SortedDataset& dataset, double p) {
  const std::size_t n = dataset.size();
  if (n == 0) throw Error("cumulative_at needs at least one sample");
  const auto& s = dataset.scores;
  const std::size_t count = static_cast<std::size_t>(
      std::upper_bound(s.begin(), s.end(), p) - s.begin());
  const double inv_n = 1.0 / static_cast<double>(n);
  const double f = kernels::sum({s.data(), count}) * inv_n;
  const double e = kernels::sum({dataset.outcomes.data(), count}) * inv_n;
  return {f, e};
}

CumulativeCurve cumulative_curve(const SortedDataset& dataset) {
  return curve_from_columns(dataset.scores, dataset.outcomes);
}

SlopeEstimate secant_slope(const CumulativeCurve& curve, std::size_t k_lo,
                           std::size_t k_hi) {
  const std::size_t n = curve.size();
  if (!(k_lo < k_hi && k_hi <= n)) {
    throw Error("invalid secant range (" + std::to_string(k_lo) + ", " +
                std::to_string(k_hi) + "] for n = " + std::to_string(n));
  }
  const double d_lo = (k_lo == 0) ? 0.0 : curve.ordinates[k_lo - 1];
  const double d_hi = curve.ordinates[k_hi - 1];

  SlopeEstimate est;
  est.k_lo = k_lo;
  est.k_hi = k_hi;
  est.score_lo = curve.score_at_index[k_lo == 0 ? 0 : k_lo - 1];
  est.score_hi = curve.score_at_index[k_hi - 1];
  est.slope = (d_hi - d_lo) * static_cast<double>(n) /
              static_cast<double>(k_hi - k_lo);
  return est;
}

CumulativeCurve noiseless_curve(const TrueModel& model) {
  if (model.true_probs.size() != model.scores.size()) {
    throw Error("model true_probs and scores differ in length");
  }
  return curve_from_columns(model.scores, model.true_probs);
}

}  // namespace calib

#include "calib/sample.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "calib/error.hpp"
#include "calib/kernels.hpp"

namespace calib {

std::vector<std::uint32_t> sorted_order(std::span<const PairedSample> samples,
                                        std::uint64_t tie_seed) {
  const std::size_t n = samples.size();
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw Error("dataset too large for 32-bit sample indices");
  }

  // One random key per original position; ties in score fall back to key
  // order, which is a uniformly random permutation of the tie group. The
  // final index comparison makes the order total even on key collisions.
  std::vector<std::uint64_t> keys(n);
  kernels::splitmix_fill(tie_seed, 0, keys);

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (samples[a].score != samples[b].score) {
      return samples[a].score < samples[b].score;
    }
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    return a < b;
  });
  return order;
}

SortedDataset sort_with_tie_randomization(std::span<const PairedSample> samples,
                                          std::uint64_t tie_seed) {
  if (samples.empty()) {
    throw Error("cannot sort an empty sample sequence");
  }
  for (const PairedSample& s : samples) {
    if (!(s.score >= 0.0 && s.score <= 1.0)) {
      throw Error("sample score " + std::to_string(s.score) + " outside [0,1]");
    }
    if (s.outcome != 0.0 && s.outcome != 1.0) {
      throw Error("sample outcome " + std::to_string(s.outcome) + " not in {0,1}");
    }
  }

  const std::vector<std::uint32_t> order = sorted_order(samples, tie_seed);
  SortedDataset ds;
  ds.tie_seed = tie_seed;
  ds.scores.reserve(samples.size());
  ds.outcomes.reserve(samples.size());
  for (std::uint32_t i : order) {
    ds.scores.push_back(samples[i].score);
    ds.outcomes.push_back(samples[i].outcome);
  }
  return ds;
}

}  // namespace calib

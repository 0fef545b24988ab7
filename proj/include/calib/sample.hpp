#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace calib {

// One observation: a predicted success probability and the realized binary
// outcome.
struct PairedSample {
  double score = 0.0;    // in [0, 1]
  double outcome = 0.0;  // exactly 0.0 or 1.0
};

// Samples ordered by score, the canonical input to every diagnostic. Ties
// are ordered by per-sample random keys drawn from `tie_seed`, so each
// ordering of a tie group is equally likely and the result is reproducible
// for a fixed seed. Stored column-wise; pairing is by index.
struct SortedDataset {
  std::vector<double> scores;    // non-decreasing
  std::vector<double> outcomes;  // outcomes[i] belongs to scores[i]
  std::uint64_t tie_seed = 0;

  std::size_t size() const noexcept { return scores.size(); }
  PairedSample sample(std::size_t i) const noexcept {
    return {scores[i], outcomes[i]};
  }
};

// Permutation placing `samples` in score order with randomized tie order.
std::vector<std::uint32_t> sorted_order(std::span<const PairedSample> samples,
                                        std::uint64_t tie_seed);

// Throws Error if samples is empty or any sample violates its invariants.
SortedDataset sort_with_tie_randomization(std::span<const PairedSample> samples,
                                          std::uint64_t tie_seed);

}  // namespace calib

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "calib/sample.hpp"

namespace calib {

struct TrueModel;

enum class BinningKind {
  equal_width,  // m equal-length score intervals partitioning [0, 1]
  equal_count   // m contiguous index ranges of as-equal-as-possible size
};

struct BinningScheme {
  BinningKind kind = BinningKind::equal_width;
  std::size_t bin_count = 10;  // m >= 1; equal-count also needs m <= n
};

// Half-open index range [begin, end) into the sorted samples, plus the score
// range it represents: the partition interval for equal-width bins, the
// actual score extremes for equal-count bins.
struct BinInterval {
  std::size_t begin = 0;
  std::size_t end = 0;
  double score_lo = 0.0;
  double score_hi = 0.0;
};

struct ReliabilityBin {
  double mean_score = 0.0;    // A_j
  double success_rate = 0.0;  // B_j
  std::size_t count = 0;      // samples in the bin, >= 1
  double score_lo = 0.0;
  double score_hi = 0.0;
};

// Classical reliability diagram: per-bin mean score against per-bin mean
// outcome, against the diagonal as the perfect-calibration reference.
struct ReliabilityDiagram {
  std::vector<ReliabilityBin> bins;
  BinningScheme scheme;
};

// Partition the sorted samples into bins. Equal-width intervals are
// [(j-1)/m, j/m), the last closed at 1, with empty intervals dropped;
// equal-count ranges have size ceil(n/m) or floor(n/m), larger ones first.
// Throws for bin_count 0 or equal-count with bin_count > n.
std::vector<BinInterval> assign_bins(const SortedDataset& dataset,
                                     const BinningScheme& scheme);

ReliabilityDiagram reliability_diagram(const SortedDataset& dataset,
                                       const BinningScheme& scheme);

// Diagram of exact expectations: success_rate is the bin mean of the model's
// true probabilities instead of sampled outcomes.
ReliabilityDiagram noiseless_diagram(const TrueModel& model,
                                     const BinningScheme& scheme);

}  // namespace calib

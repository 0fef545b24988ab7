#include "calib/binning.hpp"

#include <algorithm>
#include <string>

#include "calib/error.hpp"
#include "calib/kernels.hpp"
#include "calib/synthetic.hpp"

namespace calib {

namespace {

std::vector<BinInterval> bins_over(std::span<const double> scores,
                                   const BinningScheme& scheme) {
  const std::size_t n = scores.size();
  const std::size_t m = scheme.bin_count;
  if (n == 0) throw Error("binning needs at least one sample");
  if (m == 0) throw Error("bin count must be >= 1");

  std::vector<BinInterval> bins;
  if (scheme.kind == BinningKind::equal_count) {
    if (m > n) {
      throw Error("equal-count binning needs bin count <= sample count (" +
                  std::to_string(m) + " > " + std::to_string(n) + ")");
    }
    const std::size_t base = n / m;
    const std::size_t extra = n % m;  // the first `extra` bins get one more
    std::size_t begin = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t size = base + (j < extra ? 1 : 0);
      const std::size_t end = begin + size;
      bins.push_back({begin, end, scores[begin], scores[end - 1]});
      begin = end;
    }
  } else {
    const double dm = static_cast<double>(m);
    std::size_t begin = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      const double lo = static_cast<double>(j - 1) / dm;
      const double hi = static_cast<double>(j) / dm;
      // interval [lo, hi); the last interval is closed at 1, so it simply
      // takes every remaining sample
      const std::size_t end =
          (j == m) ? n
                   : static_cast<std::size_t>(
                         std::lower_bound(scores.begin() + begin, scores.end(), hi) -
                         scores.begin());
      if (end > begin) {
        bins.push_back({begin, end, lo, j == m ? 1.0 : hi});
      }
      begin = end;
    }
  }
  return bins;
}

ReliabilityDiagram diagram_over(std::span<const double> scores,
                                std::span<const double> values,
                                const BinningScheme& scheme) {
  ReliabilityDiagram diagram;
  diagram.scheme = scheme;
  for (const BinInterval& iv : bins_over(scores, scheme)) {
    const std::size_t count = iv.end - iv.begin;
    const double inv = 1.0 / static_cast<double>(count);
    ReliabilityBin bin;
    bin.mean_score = kernels::sum(scores.subspan(iv.begin, count)) * inv;
    bin.success_rate = kernels::sum(values.subspan(iv.begin, count)) * inv;
    bin.count = count;
    bin.score_lo = iv.score_lo;
    bin.score_hi = iv.score_hi;
    diagram.bins.push_back(bin);
  }
  return diagram;
}

}  // namespace

std::vector<BinInterval> assign_bins(const SortedDataset& dataset,
                                     const BinningScheme& scheme) {
  return bins_over(dataset.scores, scheme);
}

ReliabilityDiagram reliability_diagram(const SortedDataset& dataset,
                                       const BinningScheme& scheme) {
  return diagram_over(dataset.scores, dataset.outcomes, scheme);
}

ReliabilityDiagram noiseless_diagram(const TrueModel& model,
                                     const BinningScheme& scheme) {
  if (model.true_probs.size() != model.scores.size()) {
    throw Error("model true_probs and scores differ in length");
  }
  return diagram_over(model.scores, model.true_probs, scheme);
}

}  // namespace calib

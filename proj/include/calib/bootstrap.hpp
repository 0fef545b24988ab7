#pragma once

#include <cstdint>
#include <vector>

#include "calib/binning.hpp"
#include "calib/sample.hpp"

namespace calib {

// Reliability diagrams recomputed from datasets resampled with replacement,
// drawn as light-gray lines behind the main diagram to visualize sampling
// variability. With the default 20 replicates the envelope corresponds to
// roughly 95% confidence.
struct BootstrapEnsemble {
  std::vector<ReliabilityDiagram> replicates;
  std::uint64_t seed = 0;
  BinningScheme base_scheme;
};

// Each replicate draws n indices uniformly with replacement, re-sorts the
// resampled pairs with a fresh tie seed (resampling duplicates scores, so a
// fixed tie order would correlate replicates) and bins them under `scheme`.
// Streams are derived per replicate as
//   replicate_seed = derive(seed, r)
//   draw stream    = derive(replicate_seed, 0)
//   tie seed       = derive(replicate_seed, 1)
// so the ensemble is reproducible and replicates are independent.
BootstrapEnsemble bootstrap_diagrams(const SortedDataset& dataset,
                                     const BinningScheme& scheme,
                                     std::size_t replicate_count = 20,
                                     std::uint64_t seed = 0);

}  // namespace calib

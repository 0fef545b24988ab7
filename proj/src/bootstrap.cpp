#include "calib/bootstrap.hpp"

#include "calib/error.hpp"
#include "calib/kernels.hpp"
#include "calib/rng.hpp"

namespace calib {

BootstrapEnsemble bootstrap_diagrams(const SortedDataset& dataset,
                                     const BinningScheme& scheme,
                                     std::size_t replicate_count,
                                     std::uint64_t seed) {
  const std::size_t n = dataset.size();
  if (n == 0) throw Error("bootstrap needs at least one sample");
  if (replicate_count == 0) throw Error("bootstrap needs replicate_count >= 1");

  BootstrapEnsemble ensemble;
  ensemble.seed = seed;
  ensemble.base_scheme = scheme;
  ensemble.replicates.reserve(replicate_count);

  std::vector<std::uint64_t> draws(n);
  std::vector<PairedSample> resampled(n);
  for (std::size_t r = 0; r < replicate_count; ++r) {
    const std::uint64_t replicate_seed = rng::derive(seed, r);
    const std::uint64_t draw_seed = rng::derive(replicate_seed, 0);
    const std::uint64_t tie_seed = rng::derive(replicate_seed, 1);

    kernels::splitmix_fill(draw_seed, 0, draws);
    for (std::size_t i = 0; i < n; ++i) {
      resampled[i] = dataset.sample(rng::uniform_index(draws[i], n));
    }
    ensemble.replicates.push_back(
        reliability_diagram(sort_with_tie_randomization(resampled, tie_seed), scheme));
  }
  return ensemble;
}

}  // namespace calib

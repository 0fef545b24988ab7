#include "calib/kernels.hpp"

#include <cassert>

#include "calib/rng.hpp"
#include "compensated.hpp"

namespace calib::kernels {

namespace scalar {

double sum(std::span<const double> x) {
  detail::Neumaier acc;
  for (double v : x) acc.add(v);
  return acc.value();
}

double sum_pq(std::span<const double> p) {
  detail::Neumaier acc;
  for (double v : p) acc.add(v * (1.0 - v));
  return acc.value();
}

void splitmix_fill(std::uint64_t seed, std::uint64_t start,
                   std::span<std::uint64_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = rng::stream_at(seed, start + i);
  }
}

void bernoulli_fill(std::uint64_t seed, std::span<const double> probs,
                    std::span<double> out) {
  assert(probs.size() == out.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    out[i] = rng::bernoulli(rng::stream_at(seed, i), probs[i]) ? 1.0 : 0.0;
  }
}

}  // namespace scalar

void prefix_scaled_diff(std::span<const double> a, std::span<const double> b,
                        double scale, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  detail::Neumaier acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc.add(a[i] - b[i]);
    out[i] = scale * acc.value();
  }
}

}  // namespace calib::kernels

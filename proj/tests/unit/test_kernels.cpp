#include <doctest.h>

#include <cmath>
#include <vector>

#include "calib/kernels.hpp"
#include "calib/rng.hpp"
#include "test_util.hpp"

using namespace calib;

namespace {

std::vector<double> random_doubles(std::size_t n, std::uint64_t seed,
                                   double lo = -1.0, double hi = 1.0) {
  rng::Stream stream(seed);
  std::vector<double> x(n);
  for (double& v : x) v = lo + (hi - lo) * stream.next_unit();
  return x;
}

const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 31, 64, 100, 1023, 4096};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar sum matches wide-precision reference") {
  for (std::size_t n : kSizes) {
    const auto x = random_doubles(n, 11 + n);
    const double got = kernels::scalar::sum(x);
    const double want = static_cast<double>(testutil::exact_sum(x));
    CHECK(std::fabs(got - want) <= 1e-13 * std::max(1.0, std::fabs(want)));
  }
}

TEST_CASE("compensated sum survives catastrophic cancellation") {
  const std::vector<double> x{1e16, 1.0, -1e16, 1.0};
  CHECK(kernels::scalar::sum(x) == 2.0);
  if (kernels::avx2_available()) CHECK(kernels::avx2::sum(x) == 2.0);
}

TEST_CASE("scalar sum_pq matches wide-precision reference") {
  for (std::size_t n : kSizes) {
    const auto p = random_doubles(n, 23 + n, 0.0, 1.0);
    long double want = 0.0L;
    for (double v : p) want += static_cast<long double>(v) * (1.0L - v);
    const double got = kernels::scalar::sum_pq(p);
    CHECK(std::fabs(got - static_cast<double>(want)) <= 1e-12);
  }
}

TEST_CASE("prefix_scaled_diff matches wide-precision reference") {
  const std::size_t n = 5000;
  const auto a = random_doubles(n, 31, 0.0, 1.0);
  const auto b = random_doubles(n, 37, 0.0, 1.0);
  std::vector<double> out(n);
  kernels::prefix_scaled_diff(a, b, 1.0 / static_cast<double>(n), out);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    acc += static_cast<long double>(a[i]) - b[i];
    const double want = static_cast<double>(acc / n);
    CHECK(std::fabs(out[i] - want) <= 1e-14);
  }
}

TEST_CASE("prefix_scaled_diff leaves the running value bit-unchanged on zero diffs") {
  const std::size_t n = 64;
  auto a = random_doubles(n, 41, 0.0, 1.0);
  auto b = random_doubles(n, 43, 0.0, 1.0);
  for (std::size_t i = 20; i < 40; ++i) b[i] = a[i];  // exact zero differences
  std::vector<double> out(n);
  kernels::prefix_scaled_diff(a, b, 0.125, out);
  for (std::size_t i = 20; i < 40; ++i) {
    CHECK(out[i] == out[19]);
  }
}

TEST_CASE("splitmix_fill honors the start offset") {
  std::vector<std::uint64_t> whole(300);
  kernels::scalar::splitmix_fill(99, 0, whole);
  std::vector<std::uint64_t> tail(100);
  kernels::scalar::splitmix_fill(99, 200, tail);
  for (std::size_t i = 0; i < tail.size(); ++i) {
    CHECK(tail[i] == whole[200 + i]);
    CHECK(whole[200 + i] == rng::stream_at(99, 200 + i));
  }
}

TEST_CASE("bernoulli threshold comparison is exact at the edges") {
  CHECK(rng::bernoulli(0, 1.0));
  CHECK(rng::bernoulli(~0ULL, 1.0));            // p = 1 always succeeds
  CHECK_FALSE(rng::bernoulli(0, 0.0));          // p = 0 never succeeds
  CHECK(rng::bernoulli(0x7fffffffffffffffULL, 0.5));
  CHECK_FALSE(rng::bernoulli(0x8000000000000000ULL, 0.5));  // u/2^64 = 0.5 exactly
}

TEST_CASE("avx2 integer kernels are bit-identical to scalar") {
  if (!kernels::avx2_available()) return;
  for (std::size_t n : kSizes) {
    std::vector<std::uint64_t> s(n), v(n);
    kernels::scalar::splitmix_fill(7, 5, s);
    kernels::avx2::splitmix_fill(7, 5, v);
    CHECK(s == v);

    const auto p = random_doubles(n, 51 + n, 0.0, 1.0);
    std::vector<double> so(n), vo(n);
    kernels::scalar::bernoulli_fill(13, p, so);
    kernels::avx2::bernoulli_fill(13, p, vo);
    CHECK(so == vo);
  }
}

TEST_CASE("avx2 bernoulli_fill handles degenerate probabilities exactly") {
  if (!kernels::avx2_available()) return;
  std::vector<double> p(37, 0.0);
  for (std::size_t i = 0; i < p.size(); i += 3) p[i] = 1.0;
  std::vector<double> so(p.size()), vo(p.size());
  kernels::scalar::bernoulli_fill(5, p, so);
  kernels::avx2::bernoulli_fill(5, p, vo);
  CHECK(so == vo);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(so[i] == (p[i] == 1.0 ? 1.0 : 0.0));
  }
}

TEST_CASE("avx2 reductions agree with scalar to accumulation accuracy") {
  if (!kernels::avx2_available()) return;
  for (std::size_t n : kSizes) {
    const auto x = random_doubles(n, 61 + n);
    CHECK(std::fabs(kernels::avx2::sum(x) - kernels::scalar::sum(x)) <= 1e-13);
    const auto p = random_doubles(n, 67 + n, 0.0, 1.0);
    CHECK(std::fabs(kernels::avx2::sum_pq(p) - kernels::scalar::sum_pq(p)) <= 1e-13);
  }
}

TEST_CASE("force_isa switches the dispatched backend") {
  const kernels::Isa before = kernels::active_isa();
  kernels::force_isa(kernels::Isa::scalar);
  CHECK(kernels::active_isa() == kernels::Isa::scalar);
  if (kernels::avx2_available()) {
    kernels::force_isa(kernels::Isa::avx2);
    CHECK(kernels::active_isa() == kernels::Isa::avx2);
  }
  kernels::force_isa(before);
}

TEST_CASE("uniform_index stays in range and covers small ranges") {
  rng::Stream stream(77);
  std::vector<int> seen(5, 0);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t idx = rng::uniform_index(stream.next(), 5);
    REQUIRE(idx < 5);
    ++seen[idx];
  }
  for (int c : seen) CHECK(c > 100);
}

}  // TEST_SUITE

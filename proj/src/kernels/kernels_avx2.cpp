// AVX2 kernel variants. This translation unit is compiled with -mavx2 -mfma
// and must only be entered after the runtime CPU check in dispatch.cpp.

#include "calib/kernels.hpp"

#if defined(CALIB_AVX2_BUILD)

#include <immintrin.h>

#include <cassert>
#include <cstdint>

#include "calib/rng.hpp"
#include "compensated.hpp"

namespace calib::kernels::avx2 {

namespace {

// 64x64 -> low 64 multiply for 4 lanes (AVX2 has no native epi64 mullo).
inline __m256i mullo64(__m256i a, __m256i b) {
  const __m256i lo = _mm256_mul_epu32(a, b);
  const __m256i cross = _mm256_add_epi64(
      _mm256_mul_epu32(_mm256_srli_epi64(a, 32), b),
      _mm256_mul_epu32(a, _mm256_srli_epi64(b, 32)));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i mix64(__m256i z) {
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
  z = mullo64(z, _mm256_set1_epi64x(static_cast<long long>(0xbf58476d1ce4e5b9ULL)));
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
  z = mullo64(z, _mm256_set1_epi64x(static_cast<long long>(0x94d049bb133111ebULL)));
  return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

// Counter values seed + (start+i+1)*kGolden for lanes i..i+3; advancing by
// adding 4*kGolden per step is exact mod 2^64, so lanes stay bit-identical
// to the scalar stream.
inline __m256i counter_init(std::uint64_t seed, std::uint64_t start) {
  const std::uint64_t c0 = seed + (start + 1) * rng::kGolden;
  const std::uint64_t c1 = seed + (start + 2) * rng::kGolden;
  const std::uint64_t c2 = seed + (start + 3) * rng::kGolden;
  const std::uint64_t c3 = seed + (start + 4) * rng::kGolden;
  return _mm256_set_epi64x(static_cast<long long>(c3), static_cast<long long>(c2),
                           static_cast<long long>(c1), static_cast<long long>(c0));
}

struct VecNeumaier {
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();

  void add(__m256d x) {
    const __m256d absmask =
        _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d t = _mm256_add_pd(s, x);
    const __m256d m = _mm256_cmp_pd(_mm256_and_pd(s, absmask),
                                    _mm256_and_pd(x, absmask), _CMP_GE_OQ);
    const __m256d hi = _mm256_blendv_pd(x, s, m);
    const __m256d lo = _mm256_blendv_pd(s, x, m);
    c = _mm256_add_pd(c, _mm256_add_pd(_mm256_sub_pd(hi, t), lo));
    s = t;
  }

  // Fold the 8 partials into a scalar accumulator (fixed lane order).
  detail::Neumaier fold() const {
    alignas(32) double sv[4];
    alignas(32) double cv[4];
    _mm256_store_pd(sv, s);
    _mm256_store_pd(cv, c);
    detail::Neumaier acc;
    for (double v : sv) acc.add(v);
    for (double v : cv) acc.add(v);
    return acc;
  }
};

}  // namespace

double sum(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t n4 = n & ~std::size_t(3);
  VecNeumaier vec;
  for (std::size_t i = 0; i < n4; i += 4) {
    vec.add(_mm256_loadu_pd(x.data() + i));
  }
  detail::Neumaier acc = vec.fold();
  for (std::size_t i = n4; i < n; ++i) acc.add(x[i]);
  return acc.value();
}

double sum_pq(std::span<const double> p) {
  const std::size_t n = p.size();
  const std::size_t n4 = n & ~std::size_t(3);
  VecNeumaier vec;
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d v = _mm256_loadu_pd(p.data() + i);
    vec.add(_mm256_fnmadd_pd(v, v, v));  // p - p*p
  }
  detail::Neumaier acc = vec.fold();
  for (std::size_t i = n4; i < n; ++i) acc.add(p[i] * (1.0 - p[i]));
  return acc.value();
}

void splitmix_fill(std::uint64_t seed, std::uint64_t start,
                   std::span<std::uint64_t> out) {
  const std::size_t n = out.size();
  const std::size_t n4 = n & ~std::size_t(3);
  __m256i ctr = counter_init(seed, start);
  const __m256i step = _mm256_set1_epi64x(static_cast<long long>(4 * rng::kGolden));
  for (std::size_t i = 0; i < n4; i += 4) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), mix64(ctr));
    ctr = _mm256_add_epi64(ctr, step);
  }
  for (std::size_t i = n4; i < n; ++i) out[i] = rng::stream_at(seed, start + i);
}

void bernoulli_fill(std::uint64_t seed, std::span<const double> probs,
                    std::span<double> out) {
  assert(probs.size() == out.size());
  const std::size_t n = probs.size();
  const std::size_t n4 = n & ~std::size_t(3);
  __m256i ctr = counter_init(seed, 0);
  const __m256i step = _mm256_set1_epi64x(static_cast<long long>(4 * rng::kGolden));
  const __m256i sign = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
  const __m256d one = _mm256_set1_pd(1.0);
  alignas(32) std::uint64_t th[4];
  for (std::size_t i = 0; i < n4; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) th[l] = rng::bernoulli_threshold(probs[i + l]);
    const __m256i t = _mm256_load_si256(reinterpret_cast<const __m256i*>(th));
    const __m256i u = mix64(ctr);
    ctr = _mm256_add_epi64(ctr, step);
    // unsigned u < t via sign-flipped signed compare
    const __m256i lt = _mm256_cmpgt_epi64(_mm256_xor_si256(t, sign),
                                          _mm256_xor_si256(u, sign));
    const __m256d ge1 = _mm256_cmp_pd(_mm256_loadu_pd(probs.data() + i), one, _CMP_GE_OQ);
    const __m256d m = _mm256_or_pd(_mm256_castsi256_pd(lt), ge1);
    _mm256_storeu_pd(out.data() + i, _mm256_and_pd(m, one));
  }
  for (std::size_t i = n4; i < n; ++i) {
    out[i] = rng::bernoulli(rng::stream_at(seed, i), probs[i]) ? 1.0 : 0.0;
  }
}

}  // namespace calib::kernels::avx2

#endif  // CALIB_AVX2_BUILD

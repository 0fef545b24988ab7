#pragma once

#include <cstdint>
#include <span>

namespace calib::kernels {

// Arithmetic inner loops, provided as scalar reference kernels plus AVX2
// variants selected at runtime (CPU detection, overridable via force_isa or
// the CALIBDIAG_SIMD environment variable: "scalar", "avx2" or "auto").
//
// The integer kernels (splitmix_fill, bernoulli_fill) are bit-identical
// across backends. The floating-point reductions use Neumaier-compensated
// accumulation in both backends; the backends may differ in the final bits
// and are equivalence-tested against each other and a wide-precision oracle.

enum class Isa { scalar, avx2 };

// Compensated sum of x.
double sum(std::span<const double> x);

// Compensated sum of p[i] * (1 - p[i]), the Bernoulli variance sum.
double sum_pq(std::span<const double> p);

// out[i] = stream_at(seed, start + i).
void splitmix_fill(std::uint64_t seed, std::uint64_t start,
                   std::span<std::uint64_t> out);

// out[i] = 1.0 if stream_at(seed, i)/2^64 < probs[i] else 0.0, with the
// comparison evaluated exactly (see rng::bernoulli).
// Requires out.size() == probs.size().
void bernoulli_fill(std::uint64_t seed, std::span<const double> probs,
                    std::span<double> out);

// out[i] = scale * sum_{j<=i} (a[j] - b[j]), Neumaier-compensated running
// sum. A strictly sequential recurrence, kept scalar in every backend so
// that a zero difference leaves the emitted prefix bit-unchanged.
// Requires a.size() == b.size() == out.size().
void prefix_scaled_diff(std::span<const double> a, std::span<const double> b,
                        double scale, std::span<double> out);

Isa active_isa();
void force_isa(Isa isa);  // test/CLI hook; falls back to scalar if unavailable
bool avx2_available();

// Per-backend entry points, used by the equivalence tests. The avx2
// functions must only be called when avx2_available() is true.
namespace scalar {
double sum(std::span<const double> x);
double sum_pq(std::span<const double> p);
void splitmix_fill(std::uint64_t seed, std::uint64_t start,
                   std::span<std::uint64_t> out);
void bernoulli_fill(std::uint64_t seed, std::span<const double> probs,
                    std::span<double> out);
}  // namespace scalar

namespace avx2 {
double sum(std::span<const double> x);
double sum_pq(std::span<const double> p);
void splitmix_fill(std::uint64_t seed, std::uint64_t start,
                   std::span<std::uint64_t> out);
void bernoulli_fill(std::uint64_t seed, std::span<const double> probs,
                    std::span<double> out);
}  // namespace avx2

}  // namespace calib::kernels

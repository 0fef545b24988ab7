#include "calib/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace calib::kernels {

#if !defined(CALIB_AVX2_BUILD)
// Link-time stubs for builds without the AVX2 translation unit. Guarded by
// avx2_available(), which returns false in that case.
namespace avx2 {
double sum(std::span<const double>) { std::abort(); }
double sum_pq(std::span<const double>) { std::abort(); }
void splitmix_fill(std::uint64_t, std::uint64_t, std::span<std::uint64_t>) {
  std::abort();
}
void bernoulli_fill(std::uint64_t, std::span<const double>, std::span<double>) {
  std::abort();
}
}  // namespace avx2
#endif

namespace {

struct Table {
  Isa isa;
  double (*sum)(std::span<const double>);
  double (*sum_pq)(std::span<const double>);
  void (*splitmix_fill)(std::uint64_t, std::uint64_t, std::span<std::uint64_t>);
  void (*bernoulli_fill)(std::uint64_t, std::span<const double>, std::span<double>);
};

constexpr Table kScalarTable{Isa::scalar, &scalar::sum, &scalar::sum_pq,
                             &scalar::splitmix_fill, &scalar::bernoulli_fill};

#if defined(CALIB_AVX2_BUILD)
constexpr Table kAvx2Table{Isa::avx2, &avx2::sum, &avx2::sum_pq,
                           &avx2::splitmix_fill, &avx2::bernoulli_fill};
#endif

const Table* select(Isa isa) {
#if defined(CALIB_AVX2_BUILD)
  if (isa == Isa::avx2 && avx2_available()) return &kAvx2Table;
#else
  (void)isa;
#endif
  return &kScalarTable;
}

Isa initial_isa() {
  if (const char* env = std::getenv("CALIBDIAG_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0) return Isa::avx2;
  }
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<const Table*> g_table{nullptr};

const Table& table() {
  const Table* t = g_table.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = select(initial_isa());
    g_table.store(t, std::memory_order_release);
  }
  return *t;
}

}  // namespace

bool avx2_available() {
#if defined(CALIB_AVX2_BUILD)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return table().isa; }

void force_isa(Isa isa) {
  g_table.store(select(isa), std::memory_order_release);
}

double sum(std::span<const double> x) { return table().sum(x); }

double sum_pq(std::span<const double> p) { return table().sum_pq(p); }

void splitmix_fill(std::uint64_t seed, std::uint64_t start,
                   std::span<std::uint64_t> out) {
  table().splitmix_fill(seed, start, out);
}

void bernoulli_fill(std::uint64_t seed, std::span<const double> probs,
                    std::span<double> out) {
  table().bernoulli_fill(seed, probs, out);
}

}  // namespace calib::kernels

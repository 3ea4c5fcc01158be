#include "antiwick/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace antiwick::simd {

namespace {

bool detect_avx2() noexcept {
#if defined(ANTIWICK_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  const char* env = std::getenv("ANTIWICK_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Backend::scalar;
  return detect_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

}  // namespace

bool avx2_available() noexcept {
  static const bool available = detect_avx2();
  return available;
}

Backend active_backend() noexcept { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available())
    throw std::invalid_argument("AVX2/FMA kernels are not available on this CPU or build");
  backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) noexcept { return b == Backend::avx2 ? "avx2" : "scalar"; }

#if defined(ANTIWICK_HAVE_AVX2)
#define ANTIWICK_DISPATCH(fn, ...)                                              \
  (active_backend() == Backend::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define ANTIWICK_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

std::complex<double> complex_dot_conj(std::span<const double> ar, std::span<const double> ai,
                                      std::span<const double> br, std::span<const double> bi) {
  return ANTIWICK_DISPATCH(complex_dot_conj, ar, ai, br, bi);
}

void caxpy(std::complex<double> alpha, std::span<const double> xr, std::span<const double> xi,
           std::span<double> yr, std::span<double> yi) {
  ANTIWICK_DISPATCH(caxpy, alpha, xr, xi, yr, yi);
}

void recurrence_step(double a, double b, std::span<const double> x, std::span<const double> prev,
                     std::span<const double> cur, std::span<double> next) {
  ANTIWICK_DISPATCH(recurrence_step, a, b, x, prev, cur, next);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return ANTIWICK_DISPATCH(dot, a, b);
}

#undef ANTIWICK_DISPATCH

}  // namespace antiwick::simd

#pragma once

// Inner-loop kernels used by the transform and assembly code.
//
// Each kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant compiled in its own translation unit. The variant is
// picked once at startup from CPUID; set_backend() overrides it (tests use
// this to check the two paths against each other). The environment variable
// ANTIWICK_SIMD=scalar forces the reference path.
//
// Complex vectors are passed split into real and imaginary arrays of equal
// length.

#include <complex>
#include <span>

namespace antiwick::simd {

enum class Backend { scalar, avx2 };

bool avx2_available() noexcept;
Backend active_backend() noexcept;
/// Throws std::invalid_argument if the backend is not available on this CPU.
void set_backend(Backend b);
const char* backend_name(Backend b) noexcept;

/// sum_k (ar[k] + i ai[k]) * conj(br[k] + i bi[k])
std::complex<double> complex_dot_conj(std::span<const double> ar, std::span<const double> ai,
                                      std::span<const double> br, std::span<const double> bi);

/// y += alpha * x
void caxpy(std::complex<double> alpha, std::span<const double> xr, std::span<const double> xi,
           std::span<double> yr, std::span<double> yi);

/// next[k] = a * x[k] * cur[k] - b * prev[k]   (one step of a three-term recurrence)
void recurrence_step(double a, double b, std::span<const double> x, std::span<const double> prev,
                     std::span<const double> cur, std::span<double> next);

/// sum_k a[k] * b[k]
double dot(std::span<const double> a, std::span<const double> b);

namespace scalar {
std::complex<double> complex_dot_conj(std::span<const double> ar, std::span<const double> ai,
                                      std::span<const double> br, std::span<const double> bi);
void caxpy(std::complex<double> alpha, std::span<const double> xr, std::span<const double> xi,
           std::span<double> yr, std::span<double> yi);
void recurrence_step(double a, double b, std::span<const double> x, std::span<const double> prev,
                     std::span<const double> cur, std::span<double> next);
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

namespace avx2 {
std::complex<double> complex_dot_conj(std::span<const double> ar, std::span<const double> ai,
                                      std::span<const double> br, std::span<const double> bi);
void caxpy(std::complex<double> alpha, std::span<const double> xr, std::span<const double> xi,
           std::span<double> yr, std::span<double> yi);
void recurrence_step(double a, double b, std::span<const double> x, std::span<const double> prev,
                     std::span<const double> cur, std::span<double> next);
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace avx2

}  // namespace antiwick::simd

#pragma once

// Data-parallel inner loops shared by the forward simulator and the moment
// integrals. Each kernel has a portable scalar reference and, on x86-64, an
// AVX2/FMA variant. The variant is picked once at first use from CPUID; the
// environment variable ROTOMO_FORCE_SCALAR=1 pins the scalar table.

#include <cstddef>
#include <span>
#include <string_view>

namespace rotomo::kernels {

struct KernelTable {
  std::string_view name;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*hadamard)(const double* a, const double* b, double* out, std::size_t n);
  // re += sum_i c[i] * g[i], im += sum_i s[i] * g[i]  (one pass, shared g)
  void (*dot2)(const double* c, const double* s, const double* g, std::size_t n,
               double* re, double* im);
};

const KernelTable& scalar_table() noexcept;

// nullptr when the build or the host CPU lacks AVX2+FMA.
const KernelTable* avx2_table() noexcept;

// The table used by the library.
const KernelTable& active() noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void hadamard(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  active().hadamard(a.data(), b.data(), out.data(), a.size());
}

}  // namespace rotomo::kernels

#include "rotomo/kernels.hpp"

namespace rotomo::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void hadamard_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void dot2_scalar(const double* c, const double* s, const double* g, std::size_t n,
                 double* re, double* im) {
  double r = 0.0, q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r += c[i] * g[i];
    q += s[i] * g[i];
  }
  *re += r;
  *im += q;
}

constexpr KernelTable kScalar{"scalar", dot_scalar, axpy_scalar, hadamard_scalar, dot2_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace rotomo::kernels

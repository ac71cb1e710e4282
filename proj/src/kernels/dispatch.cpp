#include <cstdlib>
#include <string_view>

#include "rotomo/kernels.hpp"

namespace rotomo::kernels {

#if defined(ROTOMO_BUILD_AVX2)
extern const KernelTable kAvx2Table;
#endif

const KernelTable* avx2_table() noexcept {
#if defined(ROTOMO_BUILD_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* force = std::getenv("ROTOMO_FORCE_SCALAR");
    if (force != nullptr && std::string_view(force) != "0") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return table;
}

}  // namespace rotomo::kernels

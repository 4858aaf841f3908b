#include <cstdlib>
#include <string_view>

#include "fdsketch/errors.hpp"
#include "fdsketch/kernels.hpp"

namespace fdsketch::kernels {

namespace detail {
const Ops* avx2_table();  // kernels_avx2.cpp; nullptr when compiled out
}

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

const Ops* avx2() {
  const Ops* table = detail::avx2_table();
  if (table == nullptr || !cpu_supports_avx2()) return nullptr;
  return table;
}

const Ops& active() {
  // Selection happens exactly once; every later call sees the same table, so
  // a process is internally deterministic regardless of host capabilities.
  static const Ops& selected = []() -> const Ops& {
    if (const char* env = std::getenv("FDSKETCH_KERNELS")) {
      const std::string_view want(env);
      if (want == "scalar") return scalar();
      if (want == "avx2") {
        if (const Ops* table = avx2()) return *table;
        throw ParameterError("FDSKETCH_KERNELS=avx2 requested but AVX2 is unavailable");
      }
      throw ParameterError("unknown FDSKETCH_KERNELS value (expected scalar or avx2)");
    }
    if (const Ops* table = avx2()) return *table;
    return scalar();
  }();
  return selected;
}

}  // namespace fdsketch::kernels

#pragma once

#include <cstddef>

// Data-parallel inner loops behind the dense symmetric routines. Every kernel
// has a scalar reference implementation and, on capable x86-64 hosts, an AVX2
// variant selected once per process. Elementwise kernels (add, sub, scale,
// axpy, rot, abs_max) produce bit-identical results across backends because
// neither side fuses multiply-add; the dot reduction reassociates partial sums
// and agrees only up to rounding.

namespace fdsketch::kernels {

struct Ops {
  const char* name;
  void (*add)(double* dst, const double* a, const double* b, std::size_t n);
  void (*sub)(double* dst, const double* a, const double* b, std::size_t n);
  void (*scale)(double* dst, const double* a, double alpha, std::size_t n);
  // y += alpha * x
  void (*axpy)(double* y, double alpha, const double* x, std::size_t n);
  // Plane rotation: (x, y) <- (c*x - s*y, s*x + c*y), elementwise.
  void (*rot)(double* x, double* y, double c, double s, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*abs_max)(const double* x, std::size_t n);
};

const Ops& scalar();

// AVX2 kernel table, or nullptr when the build or the CPU lacks support.
const Ops* avx2();

bool cpu_supports_avx2();

// Backend used by the library. Resolved once per process: FDSKETCH_KERNELS
// (scalar|avx2) when set, otherwise the widest supported variant.
const Ops& active();

}  // namespace fdsketch::kernels

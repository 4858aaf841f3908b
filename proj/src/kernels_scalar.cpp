#include "fdsketch/kernels.hpp"

#include <cmath>

namespace fdsketch::kernels {

namespace {

void add_scalar(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

void sub_scalar(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}

void scale_scalar(double* dst, const double* a, double alpha, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * alpha;
}

void axpy_scalar(double* y, double alpha, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void rot_scalar(double* x, double* y, double c, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double abs_max_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

constexpr Ops kScalarOps = {
    "scalar",     add_scalar, sub_scalar, scale_scalar,
    axpy_scalar,  rot_scalar, dot_scalar, abs_max_scalar,
};

}  // namespace

const Ops& scalar() { return kScalarOps; }

}  // namespace fdsketch::kernels

#include "fdsketch/sym_matrix.hpp"

#include <cassert>
#include <cmath>
#include <utility>

#include "fdsketch/errors.hpp"
#include "fdsketch/kernels.hpp"

namespace fdsketch {

namespace {

std::size_t packed_count(int dim) {
  const auto d = static_cast<std::size_t>(dim);
  return d * (d + 1) / 2;
}

void require_same_dim(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("symmetric matrix dimension mismatch");
  }
}

}  // namespace

SymMatrix::SymMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw ParameterError("matrix dimension must be positive");
  packed_.assign(packed_count(dim), 0.0);
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix s(static_cast<int>(diag.size()));
  for (int i = 0; i < s.dim_; ++i) {
    s.packed_[s.row_offset(i)] = diag[static_cast<std::size_t>(i)];
  }
  return s;
}

double SymMatrix::operator()(int i, int j) const noexcept {
  assert(i >= 0 && i < dim_ && j >= 0 && j < dim_);
  if (i > j) std::swap(i, j);
  return packed_[row_offset(i) + static_cast<std::size_t>(j - i)];
}

void SymMatrix::set(int i, int j, double value) noexcept {
  assert(i >= 0 && i < dim_ && j >= 0 && j < dim_);
  if (i > j) std::swap(i, j);
  packed_[row_offset(i) + static_cast<std::size_t>(j - i)] = value;
}

bool SymMatrix::all_finite() const noexcept {
  for (double v : packed_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double SymMatrix::max_abs() const {
  // Every distinct entry appears exactly once in the packed triangle.
  return kernels::active().abs_max(packed_.data(), packed_.size());
}

double SymMatrix::frobenius_norm() const {
  const auto& k = kernels::active();
  double sq = 0.0;
  for (int i = 0; i < dim_; ++i) {
    const double* row = packed_.data() + row_offset(i);
    const auto tail = static_cast<std::size_t>(dim_ - i - 1);
    sq += row[0] * row[0] + 2.0 * k.dot(row + 1, row + 1, tail);
  }
  return std::sqrt(sq);
}

void SymMatrix::add_in_place(const SymMatrix& other) {
  require_same_dim(*this, other);
  kernels::active().add(packed_.data(), packed_.data(), other.packed_.data(), packed_.size());
}

void SymMatrix::subtract_in_place(const SymMatrix& other) {
  require_same_dim(*this, other);
  kernels::active().sub(packed_.data(), packed_.data(), other.packed_.data(), packed_.size());
}

void SymMatrix::scale_in_place(double alpha) {
  kernels::active().scale(packed_.data(), packed_.data(), alpha, packed_.size());
}

void SymMatrix::accumulate_outer(std::span<const double> columns, int width) {
  if (width < 0 || columns.size() != static_cast<std::size_t>(dim_) * static_cast<std::size_t>(width)) {
    throw DimensionError("column block does not match matrix dimension");
  }
  const auto& k = kernels::active();
  for (int c = 0; c < width; ++c) {
    const double* x = columns.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(dim_);
    for (int p = 0; p < dim_; ++p) {
      k.axpy(packed_.data() + row_offset(p), x[p], x + p, static_cast<std::size_t>(dim_ - p));
    }
  }
}

SymMatrix add(const SymMatrix& a, const SymMatrix& b) {
  SymMatrix out = a;
  out.add_in_place(b);
  return out;
}

SymMatrix subtract(const SymMatrix& a, const SymMatrix& b) {
  SymMatrix out = a;
  out.subtract_in_place(b);
  return out;
}

SymMatrix scale(const SymMatrix& a, double alpha) {
  SymMatrix out = a;
  out.scale_in_place(alpha);
  return out;
}

SymMatrix outer_product_accumulate(const SymMatrix& s, std::span<const double> columns, int width) {
  SymMatrix out = s;
  out.accumulate_outer(columns, width);
  return out;
}

double trace(const SymMatrix& s) {
  double acc = 0.0;
  for (int i = 0; i < s.dim(); ++i) acc += s.packed()[s.row_offset(i)];
  return acc;
}

}  // namespace fdsketch

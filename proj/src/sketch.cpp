#include "fdsketch/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fdsketch/eigen.hpp"
#include "fdsketch/errors.hpp"
#include "fdsketch/kernels.hpp"

namespace fdsketch {

Batch::Batch(int dim, int width, std::vector<double> column_major)
    : dim_(dim), width_(width), data_(std::move(column_major)) {
  if (dim < 1) throw ParameterError("batch dimension must be positive");
  if (width < 1) throw ParameterError("batch width must be at least 1");
  if (data_.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(width)) {
    throw DimensionError("batch storage does not match dim x width");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw ParameterError("batch contains non-finite entries");
  }
}

Batch Batch::from_vector(std::span<const double> x) {
  return Batch(static_cast<int>(x.size()), 1, std::vector<double>(x.begin(), x.end()));
}

Batch Batch::from_columns(int dim, const std::vector<std::vector<double>>& columns) {
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(dim) * columns.size());
  for (const auto& col : columns) {
    if (col.size() != static_cast<std::size_t>(dim)) {
      throw DimensionError("column length does not match batch dimension");
    }
    data.insert(data.end(), col.begin(), col.end());
  }
  return Batch(dim, static_cast<int>(columns.size()), std::move(data));
}

FdSketch::FdSketch(int dim, int ell) : dim_(dim), ell_(ell), current_(dim) {
  if (dim < 1) throw ParameterError("sketch dimension must be positive");
  if (ell < 1 || ell > dim) throw ParameterError("ell must satisfy 1 <= ell <= dim");
}

FdSketch FdSketch::restore(int dim, int ell, std::uint64_t steps, double shrinkage_total,
                           SymMatrix current) {
  FdSketch sk(dim, ell);
  if (current.dim() != dim) throw DimensionError("restored state dimension mismatch");
  if (!current.all_finite() || !std::isfinite(shrinkage_total)) {
    throw ParameterError("restored state has non-finite entries");
  }
  sk.current_ = std::move(current);
  sk.steps_ = steps;
  sk.shrinkage_total_ = shrinkage_total;
  return sk;
}

UpdateTrace FdSketch::update(const Batch& batch) {
  if (batch.dim() != dim_) throw DimensionError("batch dimension does not match sketch");

  // Pre-shrink matrix C~_{t-1} + X X^T.
  SymMatrix pre = current_;
  pre.accumulate_outer(batch.data(), batch.width());

  const detail::RowEigen eig = detail::jacobi_row_eigen(pre, true);

  // The ell-th largest eigenvalue; PSD input means any negative value here is
  // roundoff on an exact zero, so floor it.
  const double lambda_ell = std::max(eig.values[static_cast<std::size_t>(ell_ - 1)], 0.0);

  // Shrink: eigenvalues ell..d become exactly zero, the survivors keep
  // max(lambda_i - lambda_ell, 0).
  SymMatrix next(dim_);
  const auto& k = kernels::active();
  const auto n = static_cast<std::size_t>(dim_);
  for (int j = 0; j < ell_ - 1; ++j) {
    const double weight = eig.values[static_cast<std::size_t>(j)] - lambda_ell;
    if (weight <= 0.0) continue;
    const double* v = eig.rows.data() + static_cast<std::size_t>(j) * n;
    for (int p = 0; p < dim_; ++p) {
      k.axpy(next.packed_mut().data() + next.row_offset(p), weight * v[p], v + p,
             static_cast<std::size_t>(dim_ - p));
    }
  }

  // delta = (C~_{t-1} + X X^T) - C~_t
  SymMatrix delta = std::move(pre);
  delta.subtract_in_place(next);

  current_ = std::move(next);
  steps_ += 1;
  shrinkage_total_ += lambda_ell;
  return UpdateTrace{lambda_ell, std::move(delta)};
}

double error_bound(std::span<const double> eigs_descending, int ell, int k) {
  const int d = static_cast<int>(eigs_descending.size());
  if (ell < 1 || ell > d) throw ParameterError("ell must satisfy 1 <= ell <= d");
  if (k < 0 || k >= ell) throw ParameterError("k must satisfy 0 <= k < ell");
  for (int i = 0; i + 1 < d; ++i) {
    if (eigs_descending[static_cast<std::size_t>(i)] <
        eigs_descending[static_cast<std::size_t>(i + 1)]) {
      throw ParameterError("eigenvalues must be sorted in descending order");
    }
  }
  double tail = 0.0;
  for (int i = k; i < d; ++i) tail += eigs_descending[static_cast<std::size_t>(i)];
  return tail / static_cast<double>(ell - k);
}

}  // namespace fdsketch

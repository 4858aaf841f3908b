#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fdsketch/sym_matrix.hpp"

namespace fdsketch {

/// One stream element: a block of `width` column vectors of length `dim`,
/// stored column-major so each vector is contiguous. Entries are validated
/// finite at construction.
class Batch {
 public:
  Batch(int dim, int width, std::vector<double> column_major);
  static Batch from_vector(std::span<const double> x);
  static Batch from_columns(int dim, const std::vector<std::vector<double>>& columns);

  int dim() const noexcept { return dim_; }
  int width() const noexcept { return width_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<const double> column(int j) const noexcept {
    return {data_.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }

 private:
  int dim_;
  int width_;
  std::vector<double> data_;
};

/// Per-update record: the shrinkage amount and the loss matrix
/// delta = X X^T - C~_t + C~_{t-1}, which is PSD with top eigenvalues equal
/// to lambda_ell.
struct UpdateTrace {
  double lambda_ell = 0.0;
  SymMatrix delta;
};

/// Streaming covariance sketch. Each update eigendecomposes
/// C~_{t-1} + X X^T and shrinks every eigenvalue by the ell-th largest,
/// floored at zero, so the result always has rank at most ell-1.
///
/// Updates are strictly sequential (single writer); a finished sketch is
/// safe for concurrent read-only use.
class FdSketch {
 public:
  /// Fresh zero sketch. Requires 1 <= ell <= dim.
  FdSketch(int dim, int ell);

  /// Rebuild from persisted state (see serialize.hpp). Validates parameter
  /// ranges and finiteness, not the spectral invariants.
  static FdSketch restore(int dim, int ell, std::uint64_t steps, double shrinkage_total,
                          SymMatrix current);

  UpdateTrace update(const Batch& batch);

  const SymMatrix& covariance_estimate() const noexcept { return current_; }
  int dim() const noexcept { return dim_; }
  int ell() const noexcept { return ell_; }
  std::uint64_t steps() const noexcept { return steps_; }
  double shrinkage_total() const noexcept { return shrinkage_total_; }

 private:
  int dim_;
  int ell_;
  SymMatrix current_;
  std::uint64_t steps_ = 0;
  double shrinkage_total_ = 0.0;
};

/// Error envelope for the sketch: (1 / (ell - k)) * sum of eigenvalues
/// k+1 .. d of the exact covariance. Requires 0 <= k < ell <= d and a
/// non-increasing eigenvalue list.
double error_bound(std::span<const double> eigs_descending, int ell, int k);

}  // namespace fdsketch

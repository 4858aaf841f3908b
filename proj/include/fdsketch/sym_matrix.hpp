#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fdsketch {

/// Dense symmetric d x d matrix stored as a packed upper triangle, so symmetry
/// is structural: entry (i, j) and (j, i) are the same storage slot.
///
/// Packed layout is row-major over the upper triangle:
///   (0,0) (0,1) ... (0,d-1) (1,1) ... (1,d-1) (2,2) ...
/// which keeps every row tail S[i][i..d) contiguous for the kernels.
class SymMatrix {
 public:
  explicit SymMatrix(int dim);  // zero matrix, dim >= 1
  static SymMatrix diagonal(std::span<const double> diag);

  int dim() const noexcept { return dim_; }
  std::size_t packed_size() const noexcept { return packed_.size(); }

  double operator()(int i, int j) const noexcept;
  void set(int i, int j, double value) noexcept;

  std::span<const double> packed() const noexcept { return packed_; }
  std::span<double> packed_mut() noexcept { return packed_; }

  /// Offset of the contiguous row tail S[i][i..d) in the packed array.
  std::size_t row_offset(int i) const noexcept {
    const auto u = static_cast<std::size_t>(i);
    const auto d = static_cast<std::size_t>(dim_);
    return u * d - u * (u - 1) / 2;
  }

  bool all_finite() const noexcept;
  double max_abs() const;
  double frobenius_norm() const;

  void add_in_place(const SymMatrix& other);
  void subtract_in_place(const SymMatrix& other);
  void scale_in_place(double alpha);

  /// S += X * X^T for a column-major d x width block of column vectors.
  /// Structural symmetry makes the re-symmetrization step a no-op.
  void accumulate_outer(std::span<const double> columns, int width);

 private:
  int dim_;
  std::vector<double> packed_;
};

SymMatrix add(const SymMatrix& a, const SymMatrix& b);
SymMatrix subtract(const SymMatrix& a, const SymMatrix& b);
SymMatrix scale(const SymMatrix& a, double alpha);
SymMatrix outer_product_accumulate(const SymMatrix& s, std::span<const double> columns, int width);

/// Sum of diagonal entries, accumulated in index order.
double trace(const SymMatrix& s);

}  // namespace fdsketch

#pragma once

#include <span>
#include <vector>

#include "fdsketch/sym_matrix.hpp"

namespace fdsketch {

struct EigenDecomposition {
  int dim = 0;
  std::vector<double> vectors;  // row-major d x d; column j is the eigenvector of values[j]
  std::vector<double> values;   // descending; ties keep pre-sort index order

  double vec(int i, int j) const {
    return vectors[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) +
                   static_cast<std::size_t>(j)];
  }
};

/// Cyclic Jacobi sweeps with a fixed pair order. Deterministic for a given
/// input and kernel backend. Throws ConvergenceError if the off-diagonal mass
/// has not dropped below jacobi_tol * ||S||_F after max_sweeps sweeps.
EigenDecomposition sym_eigendecompose(const SymMatrix& S);

/// Eigenvalues only (descending). Same sweeps, no vector accumulation.
std::vector<double> sym_eigenvalues(const SymMatrix& S);

/// Largest |eigenvalue|. Power iteration on S^2 with a residual stopping rule
/// and a deterministic start vector; falls back to the Jacobi route when the
/// iteration stalls (tightly clustered extremes).
double spectral_norm(const SymMatrix& S);

/// True iff the smallest eigenvalue is >= -tol.
bool is_psd(const SymMatrix& S, double tol);

/// y = S * x
void sym_multiply(const SymMatrix& S, std::span<const double> x, std::span<double> y);

namespace detail {

/// Eigenvectors as rows (row j holds the eigenvector of values[j]) -- the
/// layout the Jacobi sweeps and the sketch reconstruction work in directly.
struct RowEigen {
  int dim = 0;
  std::vector<double> values;
  std::vector<double> rows;  // empty when want_vectors == false
};

RowEigen jacobi_row_eigen(const SymMatrix& S, bool want_vectors = true);

}  // namespace detail

}  // namespace fdsketch

#pragma once

// Numeric tolerances shared across the library. All values are dimensionless;
// each use site states whether the comparison is absolute or relative.

namespace fdsketch::tol {

// Cyclic Jacobi stopping rule: off-diagonal Frobenius norm vs ||S||_F.
inline constexpr double jacobi_tol = 1e-12;
inline constexpr int max_sweeps = 64;

// Eigendecomposition quality, relative to max(1, ||S||_max).
inline constexpr double recon_tol = 1e-9;
inline constexpr double ortho_tol = 1e-9;

// Agreement between spectral-norm routes.
inline constexpr double norm_tol = 1e-9;

// Eigenvalue ell of the sketch after an update.
inline constexpr double rank_tol = 1e-12;

// Shrunk eigenvalues in (-clip_tol, 0) are snapped to zero.
inline constexpr double clip_tol = 1e-12;

// Default PSD test threshold on the smallest eigenvalue.
inline constexpr double psd_tol = 1e-10;

// Bound verification: absolute term plus a term relative to the bound.
inline constexpr double report_tol_abs = 1e-8;
inline constexpr double report_tol_rel = 1e-8;

}  // namespace fdsketch::tol

#include "fdsketch/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "fdsketch/errors.hpp"
#include "fdsketch/kernels.hpp"
#include "fdsketch/tolerances.hpp"

namespace fdsketch {

namespace detail {

namespace {

// Off-diagonal Frobenius norm of a full row-major symmetric buffer.
double off_diagonal_norm(const std::vector<double>& a, int d) {
  const auto& k = kernels::active();
  double sq = 0.0;
  for (int i = 0; i + 1 < d; ++i) {
    const double* tail = a.data() + static_cast<std::size_t>(i) * d + i + 1;
    sq += k.dot(tail, tail, static_cast<std::size_t>(d - i - 1));
  }
  return std::sqrt(2.0 * sq);
}

}  // namespace

RowEigen jacobi_row_eigen(const SymMatrix& S, bool want_vectors) {
  if (!S.all_finite()) throw ParameterError("eigendecomposition input has non-finite entries");

  const int d = S.dim();
  const auto n = static_cast<std::size_t>(d);
  const auto& k = kernels::active();

  // Full working copy: rows stay contiguous for the rotation kernel, the
  // mirror pass restores the columns afterwards.
  std::vector<double> a(n * n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a[static_cast<std::size_t>(i) * n + j] = S(i, j);
  }

  std::vector<double> w;
  if (want_vectors) {
    w.assign(n * n, 0.0);
    for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i) * n + i] = 1.0;
  }

  const double threshold = tol::jacobi_tol * S.frobenius_norm();

  int sweeps = 0;
  double off = off_diagonal_norm(a, d);
  while (off > threshold) {
    if (sweeps == tol::max_sweeps) {
      throw ConvergenceError("Jacobi eigensolver did not converge", off);
    }
    for (int p = 0; p + 1 < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const double apq = a[static_cast<std::size_t>(p) * n + q];
        if (apq == 0.0) continue;
        const double app = a[static_cast<std::size_t>(p) * n + p];
        const double aqq = a[static_cast<std::size_t>(q) * n + q];

        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // One-sided row rotation gives the final values for columns != p,q;
        // symmetry supplies the column entries, the 2x2 block is closed-form.
        k.rot(a.data() + static_cast<std::size_t>(p) * n,
              a.data() + static_cast<std::size_t>(q) * n, c, s, n);
        for (int r = 0; r < d; ++r) {
          if (r == p || r == q) continue;
          a[static_cast<std::size_t>(r) * n + p] = a[static_cast<std::size_t>(p) * n + r];
          a[static_cast<std::size_t>(r) * n + q] = a[static_cast<std::size_t>(q) * n + r];
        }
        a[static_cast<std::size_t>(p) * n + p] = app - t * apq;
        a[static_cast<std::size_t>(q) * n + q] = aqq + t * apq;
        a[static_cast<std::size_t>(p) * n + q] = 0.0;
        a[static_cast<std::size_t>(q) * n + p] = 0.0;

        if (want_vectors) {
          k.rot(w.data() + static_cast<std::size_t>(p) * n,
                w.data() + static_cast<std::size_t>(q) * n, c, s, n);
        }
      }
    }
    ++sweeps;
    off = off_diagonal_norm(a, d);
  }

  // Descending sort; stable so equal values keep their pre-sort index order.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return a[static_cast<std::size_t>(x) * n + x] > a[static_cast<std::size_t>(y) * n + y];
  });

  RowEigen out;
  out.dim = d;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto src = static_cast<std::size_t>(order[j]);
    out.values[j] = a[src * n + src];
  }
  if (want_vectors) {
    out.rows.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto src = static_cast<std::size_t>(order[j]);
      std::copy_n(w.data() + src * n, n, out.rows.data() + j * n);
    }
  }
  return out;
}

}  // namespace detail

EigenDecomposition sym_eigendecompose(const SymMatrix& S) {
  const detail::RowEigen rows = detail::jacobi_row_eigen(S, true);
  const auto n = static_cast<std::size_t>(rows.dim);

  EigenDecomposition out;
  out.dim = rows.dim;
  out.values = rows.values;
  out.vectors.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + j] = rows.rows[j * n + i];
  }
  return out;
}

std::vector<double> sym_eigenvalues(const SymMatrix& S) {
  return detail::jacobi_row_eigen(S, false).values;
}

void sym_multiply(const SymMatrix& S, std::span<const double> x, std::span<double> y) {
  const int d = S.dim();
  if (x.size() != static_cast<std::size_t>(d) || y.size() != static_cast<std::size_t>(d)) {
    throw DimensionError("vector length does not match matrix dimension");
  }
  const auto& k = kernels::active();
  std::fill(y.begin(), y.end(), 0.0);
  for (int i = 0; i < d; ++i) {
    const double* row = S.packed().data() + S.row_offset(i);
    const auto tail = static_cast<std::size_t>(d - i);
    y[static_cast<std::size_t>(i)] += k.dot(row, x.data() + i, tail);
    k.axpy(y.data() + i + 1, x[static_cast<std::size_t>(i)], row + 1, tail - 1);
  }
}

namespace {

// Deterministic pseudo-random unit vector; `salt` switches restart vectors.
std::vector<double> start_vector(int d, std::uint64_t salt) {
  std::uint64_t state = 0x9e3779b97f4a7c15ULL ^ (salt * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL);
  auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::vector<double> x(static_cast<std::size_t>(d));
  for (auto& v : x) v = static_cast<double>(next() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  const double norm = std::sqrt(kernels::active().dot(x.data(), x.data(), x.size()));
  for (auto& v : x) v /= norm;
  return x;
}

}  // namespace

double spectral_norm(const SymMatrix& S) {
  if (!S.all_finite()) throw ParameterError("spectral_norm input has non-finite entries");
  if (S.max_abs() == 0.0) return 0.0;

  const int d = S.dim();
  const auto n = static_cast<std::size_t>(d);
  const auto& k = kernels::active();
  constexpr int max_iters = 800;
  constexpr double resid_tol = 1e-12;

  std::vector<double> z(n), y(n), r(n);
  for (std::uint64_t attempt = 0; attempt < 3; ++attempt) {
    std::vector<double> x = start_vector(d, attempt);
    for (int iter = 0; iter < max_iters; ++iter) {
      sym_multiply(S, x, z);                // z = S x,  ||x|| == 1
      sym_multiply(S, z, y);                // y = S^2 x
      const double est = k.dot(z.data(), z.data(), n);  // Rayleigh quotient of S^2
      if (est == 0.0) break;                // x numerically annihilated: restart
      r = y;
      k.axpy(r.data(), -est, x.data(), n);
      const double resid = std::sqrt(k.dot(r.data(), r.data(), n));
      if (resid <= resid_tol * est) return std::sqrt(est);
      const double ynorm = std::sqrt(k.dot(y.data(), y.data(), n));
      if (ynorm == 0.0) break;
      k.scale(x.data(), y.data(), 1.0 / ynorm, n);
    }
  }

  // Stalled (clustered |lambda| extremes) -- take the dense route.
  const std::vector<double> values = sym_eigenvalues(S);
  return std::max(std::fabs(values.front()), std::fabs(values.back()));
}

bool is_psd(const SymMatrix& S, double tol) {
  const std::vector<double> values = sym_eigenvalues(S);
  return values.back() >= -tol;
}

}  // namespace fdsketch

#include "fdsketch/stream_gen.hpp"

#include <cmath>
#include <numbers>

#include "fdsketch/errors.hpp"
#include "fdsketch/kernels.hpp"

namespace fdsketch {

double PortableRng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<double> random_orthonormal_columns(PortableRng& rng, int dim, int cols) {
  if (cols < 0 || cols > dim) throw ParameterError("orthonormal block needs 0 <= cols <= dim");
  const auto& k = kernels::active();
  const auto n = static_cast<std::size_t>(dim);
  std::vector<double> basis(n * static_cast<std::size_t>(cols));

  for (int j = 0; j < cols; ++j) {
    double* v = basis.data() + static_cast<std::size_t>(j) * n;
    double norm = 0.0;
    do {
      for (std::size_t i = 0; i < n; ++i) v[i] = rng.gaussian();
      // Gram-Schmidt against the finished columns, twice.
      for (int pass = 0; pass < 2; ++pass) {
        for (int p = 0; p < j; ++p) {
          const double* u = basis.data() + static_cast<std::size_t>(p) * n;
          k.axpy(v, -k.dot(u, v, n), u, n);
        }
      }
      norm = std::sqrt(k.dot(v, v, n));
    } while (norm < 1e-8);  // numerically dependent draw: take a fresh one
    k.scale(v, v, 1.0 / norm, n);
  }
  return basis;
}

std::vector<std::vector<double>> generate_vectors(const StreamSpec& spec) {
  if (spec.dim < 1) throw ParameterError("generator dimension must be positive");
  if (spec.count < 0) throw ParameterError("generator count must be non-negative");

  PortableRng rng(spec.seed);
  const auto n = static_cast<std::size_t>(spec.dim);
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(spec.dim));
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(spec.count));

  switch (spec.family) {
    case StreamFamily::gaussian: {
      for (int t = 0; t < spec.count; ++t) {
        std::vector<double> x(n);
        for (auto& v : x) v = rng.gaussian() * inv_sqrt_d;
        out.push_back(std::move(x));
      }
      break;
    }
    case StreamFamily::low_rank: {
      int rank = spec.rank;
      if (rank < 1) rank = 1;
      if (rank > spec.dim) rank = spec.dim;
      const std::vector<double> basis = random_orthonormal_columns(rng, spec.dim, rank);
      const double inv_sqrt_r = 1.0 / std::sqrt(static_cast<double>(rank));
      for (int t = 0; t < spec.count; ++t) {
        std::vector<double> x(n, 0.0);
        for (int j = 0; j < rank; ++j) {
          const double g = rng.gaussian() * inv_sqrt_r;
          kernels::active().axpy(x.data(), g, basis.data() + static_cast<std::size_t>(j) * n, n);
        }
        if (spec.noise != 0.0) {
          for (auto& v : x) v += spec.noise * rng.gaussian() * inv_sqrt_d;
        }
        out.push_back(std::move(x));
      }
      break;
    }
    case StreamFamily::rotations: {
      const std::vector<double> q = random_orthonormal_columns(rng, spec.dim, spec.dim);
      for (int t = 0; t < spec.count; ++t) {
        const double* col = q.data() + static_cast<std::size_t>(t % spec.dim) * n;
        out.emplace_back(col, col + n);
      }
      break;
    }
    case StreamFamily::repeated: {
      const std::vector<double> v = random_orthonormal_columns(rng, spec.dim, 1);
      for (int t = 0; t < spec.count; ++t) out.emplace_back(v.begin(), v.end());
      break;
    }
  }
  return out;
}

std::vector<Batch> group_batches(int dim, const std::vector<std::vector<double>>& vectors,
                                 int batch_size) {
  if (batch_size < 1) throw ParameterError("batch size must be at least 1");
  std::vector<Batch> batches;
  std::vector<std::vector<double>> group;
  group.reserve(static_cast<std::size_t>(batch_size));
  for (const auto& x : vectors) {
    group.push_back(x);
    if (static_cast<int>(group.size()) == batch_size) {
      batches.push_back(Batch::from_columns(dim, group));
      group.clear();
    }
  }
  if (!group.empty()) batches.push_back(Batch::from_columns(dim, group));
  return batches;
}

}  // namespace fdsketch

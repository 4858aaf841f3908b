#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fdsketch/sketch.hpp"

namespace fdsketch {

/// Deterministic random source: mt19937_64 (fully specified by the standard)
/// with explicit uniform and Box-Muller Gaussian mappings, so a seed yields
/// the same stream everywhere instead of depending on the standard library's
/// distribution implementations.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform01() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian();  // standard normal

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

enum class StreamFamily {
  gaussian,   // i.i.d. N(0, 1/d) entries
  low_rank,   // signal in a random rank-r subspace plus isotropic noise
  rotations,  // columns of a fixed random orthogonal matrix, cycled
  repeated,   // one fixed unit direction every step
};

struct StreamSpec {
  StreamFamily family = StreamFamily::gaussian;
  int dim = 1;
  int count = 0;  // number of vectors
  std::uint64_t seed = 0;
  int rank = 1;        // low_rank only
  double noise = 0.0;  // low_rank only
};

std::vector<std::vector<double>> generate_vectors(const StreamSpec& spec);

/// Groups consecutive vectors into batches of `batch_size`; a shorter final
/// batch is kept as-is.
std::vector<Batch> group_batches(int dim, const std::vector<std::vector<double>>& vectors,
                                 int batch_size);

/// Column-major d x cols block with orthonormal columns (Gram-Schmidt over
/// Gaussian draws, re-orthogonalized once).
std::vector<double> random_orthonormal_columns(PortableRng& rng, int dim, int cols);

}  // namespace fdsketch

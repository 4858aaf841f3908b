#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fdsketch/sketch.hpp"
#include "fdsketch/sym_matrix.hpp"

namespace fdsketch {

/// Ground truth: the exact running sum of X_t X_t^T over the stream.
/// Verification-side only; costs O(d^2) memory by design.
class ExactCovariance {
 public:
  explicit ExactCovariance(int dim);

  void accumulate(const Batch& batch);

  const SymMatrix& covariance() const noexcept { return c_; }
  int dim() const noexcept { return dim_; }
  std::uint64_t steps() const noexcept { return steps_; }

 private:
  int dim_;
  SymMatrix c_;
  std::uint64_t steps_ = 0;
};

/// Ordered per-step records collected next to a sketch run.
struct DeltaLedger {
  std::vector<UpdateTrace> records;

  void append(UpdateTrace trace) { records.push_back(std::move(trace)); }
  std::size_t size() const noexcept { return records.size(); }
};

/// Orthogonal projection with a null space of dimension null_dim.
struct Projection {
  SymMatrix p;
  int null_dim = 0;
};

/// P = I - sum of u_i u_i^T over the top-k eigenvectors of C (deterministic
/// eigensolver order breaks ties). Requires 0 <= k <= d.
Projection complement_projection(const SymMatrix& C, int k);

/// tr(P * M * P), evaluated literally as sum_i p_i^T M p_i over the columns
/// of P.
double projected_trace(const SymMatrix& P, const SymMatrix& M);

/// Sum of eigenvalues k+1 .. d of a descending list. Requires 0 <= k <= d.
double eigen_tail_sum(std::span<const double> eigs_descending, int k);

/// Pass tolerance for comparing a measured error against a bound value:
/// absolute plus relative headroom.
double bound_pass_tolerance(double bound);

struct BoundRow {
  int k = 0;
  double bound = 0.0;
  double slack = 0.0;  // bound - measured_error
  bool pass = false;
};

/// Measured sketch error against the envelope for every k < ell.
struct BoundReport {
  int d = 0;
  int ell = 0;
  std::uint64_t steps = 0;
  double measured_error = 0.0;
  std::vector<BoundRow> rows;
  bool pass = false;
};

BoundReport verify_error_bound(const ExactCovariance& oc, const FdSketch& sk);

/// One runnable check per step of the error argument, for a fixed k:
///  (a) every delta_t is PSD and has spectral norm lambda_ell^t,
///  (b) per step, ||delta_t|| <= tr(Pk delta_t Pk) / (ell - k),
///  (c) the deltas telescope: sum_t delta_t = C - C~,
///  (d) tr(Pk C~ Pk) >= 0 because the sketch is PSD,
///  (e) the chained inequality ||C - C~|| <= sum ||delta_t||
///      <= tr(Pk C Pk) / (ell - k).
struct ProofStepReport {
  int k = 0;
  int ell = 0;
  std::uint64_t steps = 0;

  bool delta_psd_pass = false;
  double delta_min_eigenvalue = 0.0;  // most negative across steps

  bool delta_norm_pass = false;
  double delta_norm_max_dev = 0.0;  // max |spectral_norm(delta) - lambda_ell|

  bool step_projection_pass = false;
  double step_projection_min_slack = 0.0;  // min of rhs - ||delta_t||

  bool telescoping_pass = false;
  double telescoping_max_dev = 0.0;  // max |(sum delta - (C - C~))_ij|

  bool sketch_trace_pass = false;
  double sketch_projected_trace = 0.0;  // tr(Pk C~ Pk)

  bool chain_pass = false;
  double chain_slack_sum = 0.0;    // sum ||delta_t|| - ||C - C~||
  double chain_slack_bound = 0.0;  // tr(Pk C Pk)/(ell-k) - sum ||delta_t||

  bool pass = false;
};

ProofStepReport verify_proof_steps(const DeltaLedger& ledger, const ExactCovariance& oc,
                                   const FdSketch& sk, int k);

}  // namespace fdsketch

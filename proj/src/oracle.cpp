#include "fdsketch/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "fdsketch/eigen.hpp"
#include "fdsketch/errors.hpp"
#include "fdsketch/kernels.hpp"
#include "fdsketch/tolerances.hpp"

namespace fdsketch {

ExactCovariance::ExactCovariance(int dim) : dim_(dim), c_(dim) {}

void ExactCovariance::accumulate(const Batch& batch) {
  if (batch.dim() != dim_) throw DimensionError("batch dimension does not match accumulator");
  c_.accumulate_outer(batch.data(), batch.width());
  steps_ += 1;
}

Projection complement_projection(const SymMatrix& C, int k) {
  const int d = C.dim();
  if (k < 0 || k > d) throw ParameterError("projection order k must satisfy 0 <= k <= d");

  SymMatrix p(d);
  for (int i = 0; i < d; ++i) p.set(i, i, 1.0);
  if (k > 0) {
    const detail::RowEigen eig = detail::jacobi_row_eigen(C, true);
    const auto& kr = kernels::active();
    const auto n = static_cast<std::size_t>(d);
    for (int j = 0; j < k; ++j) {
      const double* v = eig.rows.data() + static_cast<std::size_t>(j) * n;
      for (int row = 0; row < d; ++row) {
        kr.axpy(p.packed_mut().data() + p.row_offset(row), -v[row], v + row,
                static_cast<std::size_t>(d - row));
      }
    }
  }
  return Projection{std::move(p), k};
}

double projected_trace(const SymMatrix& P, const SymMatrix& M) {
  if (P.dim() != M.dim()) throw DimensionError("projection and matrix dimensions differ");
  const int d = P.dim();
  const auto n = static_cast<std::size_t>(d);
  std::vector<double> col(n), prod(n);
  double acc = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) col[static_cast<std::size_t>(j)] = P(j, i);
    sym_multiply(M, col, prod);
    acc += kernels::active().dot(col.data(), prod.data(), n);
  }
  return acc;
}

double eigen_tail_sum(std::span<const double> eigs_descending, int k) {
  const int d = static_cast<int>(eigs_descending.size());
  if (k < 0 || k > d) throw ParameterError("tail index k must satisfy 0 <= k <= d");
  for (int i = 0; i + 1 < d; ++i) {
    if (eigs_descending[static_cast<std::size_t>(i)] <
        eigs_descending[static_cast<std::size_t>(i + 1)]) {
      throw ParameterError("eigenvalues must be sorted in descending order");
    }
  }
  double tail = 0.0;
  for (int i = k; i < d; ++i) tail += eigs_descending[static_cast<std::size_t>(i)];
  return tail;
}

double bound_pass_tolerance(double bound) {
  return tol::report_tol_abs + tol::report_tol_rel * std::fabs(bound);
}

BoundReport verify_error_bound(const ExactCovariance& oc, const FdSketch& sk) {
  if (oc.dim() != sk.dim()) throw DimensionError("covariance and sketch dimensions differ");

  BoundReport report;
  report.d = sk.dim();
  report.ell = sk.ell();
  report.steps = sk.steps();

  const SymMatrix diff = subtract(oc.covariance(), sk.covariance_estimate());
  report.measured_error = spectral_norm(diff);

  const std::vector<double> eigs = sym_eigenvalues(oc.covariance());
  report.pass = true;
  for (int k = 0; k < sk.ell(); ++k) {
    BoundRow row;
    row.k = k;
    row.bound = error_bound(eigs, sk.ell(), k);
    row.slack = row.bound - report.measured_error;
    row.pass = report.measured_error <= row.bound + bound_pass_tolerance(row.bound);
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

ProofStepReport verify_proof_steps(const DeltaLedger& ledger, const ExactCovariance& oc,
                                   const FdSketch& sk, int k) {
  if (oc.dim() != sk.dim()) throw DimensionError("covariance and sketch dimensions differ");
  if (ledger.size() != sk.steps()) throw ParameterError("ledger length does not match sketch steps");
  if (k < 0 || k >= sk.ell()) throw ParameterError("k must satisfy 0 <= k < ell");

  const int d = sk.dim();
  const double denom = static_cast<double>(sk.ell() - k);
  const SymMatrix& c = oc.covariance();
  const SymMatrix& sketch = sk.covariance_estimate();
  const Projection proj = complement_projection(c, k);

  ProofStepReport rep;
  rep.k = k;
  rep.ell = sk.ell();
  rep.steps = sk.steps();

  // (a) + (b), per step.
  rep.delta_psd_pass = true;
  rep.delta_norm_pass = true;
  rep.step_projection_pass = true;
  rep.delta_min_eigenvalue = 0.0;
  rep.delta_norm_max_dev = 0.0;
  rep.step_projection_min_slack = 0.0;
  bool first_step = true;

  double norm_sum = 0.0;
  SymMatrix delta_sum(d);
  for (const UpdateTrace& trace : ledger.records) {
    const std::vector<double> delta_eigs = sym_eigenvalues(trace.delta);
    const double min_eig = delta_eigs.back();
    const double norm = spectral_norm(trace.delta);
    const double norm_dev = std::fabs(norm - trace.lambda_ell);
    const double rhs = projected_trace(proj.p, trace.delta) / denom;
    const double slack = rhs - norm;

    if (first_step || min_eig < rep.delta_min_eigenvalue) rep.delta_min_eigenvalue = min_eig;
    if (norm_dev > rep.delta_norm_max_dev) rep.delta_norm_max_dev = norm_dev;
    if (first_step || slack < rep.step_projection_min_slack) rep.step_projection_min_slack = slack;
    first_step = false;

    rep.delta_psd_pass = rep.delta_psd_pass && min_eig >= -tol::psd_tol;
    rep.delta_norm_pass =
        rep.delta_norm_pass && norm_dev <= tol::norm_tol * std::max(1.0, trace.lambda_ell);
    rep.step_projection_pass =
        rep.step_projection_pass && norm <= rhs + bound_pass_tolerance(rhs);

    norm_sum += norm;
    delta_sum.add_in_place(trace.delta);
  }

  // (c) telescoping.
  SymMatrix residual = delta_sum;
  residual.subtract_in_place(c);
  residual.add_in_place(sketch);
  rep.telescoping_max_dev = residual.max_abs();
  const double tele_tol = static_cast<double>(std::max<std::uint64_t>(sk.steps(), 1)) *
                          tol::recon_tol * std::max(1.0, c.max_abs());
  rep.telescoping_pass = rep.telescoping_max_dev <= tele_tol;

  // (d) the projected sketch keeps a non-negative trace.
  rep.sketch_projected_trace = projected_trace(proj.p, sketch);
  rep.sketch_trace_pass = rep.sketch_projected_trace >= -tol::psd_tol;

  // (e) the chained inequality through the final covariance.
  const double measured = spectral_norm(subtract(c, sketch));
  const double upper = projected_trace(proj.p, c) / denom;
  rep.chain_slack_sum = norm_sum - measured;
  rep.chain_slack_bound = upper - norm_sum;
  rep.chain_pass = measured <= norm_sum + bound_pass_tolerance(norm_sum) &&
                   norm_sum <= upper + bound_pass_tolerance(upper);

  rep.pass = rep.delta_psd_pass && rep.delta_norm_pass && rep.step_projection_pass &&
             rep.telescoping_pass && rep.sketch_trace_pass && rep.chain_pass;
  return rep;
}

}  // namespace fdsketch

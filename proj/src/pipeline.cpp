#include "fdsketch/pipeline.hpp"

#include <fstream>
#include <memory>
#include <optional>

#include <json.hpp>

#include "fdsketch/errors.hpp"
#include "fdsketch/oracle.hpp"
#include "fdsketch/report_json.hpp"
#include "fdsketch/serialize.hpp"
#include "fdsketch/sketch.hpp"
#include "fdsketch/stream_gen.hpp"
#include "fdsketch/stream_io.hpp"

namespace fdsketch {

namespace {

std::vector<std::vector<double>> load_vectors(const StreamConfig& cfg, int& dim_out) {
  dim_out = 0;
  if (!cfg.generate_mode.empty()) {
    StreamSpec spec;
    if (cfg.generate_mode == "gaussian") {
      spec.family = StreamFamily::gaussian;
    } else if (cfg.generate_mode == "lowrank") {
      spec.family = StreamFamily::low_rank;
      spec.rank = cfg.rank;
      spec.noise = cfg.noise;
    } else {
      throw ParameterError("unknown generator mode: " + cfg.generate_mode);
    }
    if (cfg.dim < 1) throw ParameterError("generator mode requires --dim >= 1");
    if (cfg.count < 0) throw ParameterError("generator count must be non-negative");
    spec.dim = cfg.dim;
    spec.count = cfg.count;
    spec.seed = cfg.seed;
    dim_out = cfg.dim;
    return generate_vectors(spec);
  }

  const bool binary = cfg.format == StreamConfig::Format::binary;
  std::ifstream file(cfg.input_path, binary ? std::ios::binary : std::ios::in);
  if (!file) throw ParseError("cannot open input file: " + cfg.input_path);
  const auto reader = binary ? open_fdv1_stream(file) : open_text_stream(file);

  std::vector<std::vector<double>> vectors;
  std::vector<double> x;
  while (reader->next(x)) vectors.push_back(x);
  dim_out = reader->dim();
  return vectors;
}

// Report for an empty file whose dimension never became known: zero steps,
// zero measured error, all bounds zero.
nlohmann::ordered_json empty_stream_report(const StreamConfig& cfg) {
  if (!cfg.exact) {
    return nlohmann::ordered_json{{"d", 0}, {"ell", cfg.ell}, {"steps", 0}, {"pass", true}};
  }
  BoundReport report;
  report.d = 0;
  report.ell = cfg.ell;
  report.steps = 0;
  report.measured_error = 0.0;
  report.pass = true;
  for (int k = 0; k < cfg.ell; ++k) {
    report.rows.push_back(BoundRow{k, 0.0, 0.0, true});
  }
  return bound_report_to_json(report);
}

}  // namespace

RunResult run(const StreamConfig& config) {
  StreamConfig cfg = config;
  if (cfg.proof_steps) cfg.exact = true;

  if (cfg.input_path.empty() == cfg.generate_mode.empty()) {
    throw ParameterError("exactly one input source required (--input or --generate)");
  }
  if (cfg.batch_size < 1) throw ParameterError("batch size must be at least 1");
  if (cfg.ell < 1) throw ParameterError("ell must be at least 1");

  int dim = 0;
  const std::vector<std::vector<double>> vectors = load_vectors(cfg, dim);

  nlohmann::ordered_json doc;
  bool all_pass = true;
  std::optional<FdSketch> sketch;

  if (dim == 0) {
    // Empty text/binary-less stream: dimension unknown, nothing to sketch.
    doc = empty_stream_report(cfg);
  } else {
    if (cfg.ell > dim) throw ParameterError("ell exceeds the stream dimension");

    sketch.emplace(dim, cfg.ell);
    std::optional<ExactCovariance> oracle;
    if (cfg.exact) oracle.emplace(dim);
    DeltaLedger ledger;

    for (const Batch& batch : group_batches(dim, vectors, cfg.batch_size)) {
      UpdateTrace trace = sketch->update(batch);
      if (cfg.exact) oracle->accumulate(batch);
      if (cfg.proof_steps) ledger.append(std::move(trace));
    }

    if (cfg.exact) {
      const BoundReport report = verify_error_bound(*oracle, *sketch);
      all_pass = report.pass;
      doc = bound_report_to_json(report);
      if (cfg.proof_steps) {
        std::vector<int> ks = cfg.k_list;
        if (ks.empty()) {
          for (int k = 0; k < cfg.ell; ++k) ks.push_back(k);
        }
        nlohmann::ordered_json steps = nlohmann::ordered_json::array();
        for (int k : ks) {
          const ProofStepReport rep = verify_proof_steps(ledger, *oracle, *sketch, k);
          all_pass = all_pass && rep.pass;
          steps.push_back(proof_step_report_to_json(rep));
        }
        doc["proof_steps"] = std::move(steps);
        doc["pass"] = all_pass;
      }
    } else {
      doc = nlohmann::ordered_json{
          {"d", dim}, {"ell", cfg.ell}, {"steps", sketch->steps()}, {"pass", true}};
    }
  }

  if (!cfg.snapshot_path.empty() && sketch.has_value()) {
    save_sketch_file(*sketch, cfg.snapshot_path);
  }

  RunResult result;
  result.report_json = doc.dump(2) + "\n";
  result.exit_code = all_pass ? 0 : 1;

  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot open report file for writing: " + cfg.out_path);
    out << result.report_json;
  }
  return result;
}

}  // namespace fdsketch

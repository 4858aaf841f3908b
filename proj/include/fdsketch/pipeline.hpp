#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fdsketch {

/// End-to-end run configuration, mirroring the CLI flags.
struct StreamConfig {
  std::string input_path;     // file source; exclusive with generate_mode
  std::string generate_mode;  // "gaussian" or "lowrank"; exclusive with input_path

  enum class Format { text, binary };
  Format format = Format::text;

  int batch_size = 1;
  int ell = 0;

  bool exact = false;        // run the exact covariance oracle and bound rows
  bool proof_steps = false;  // per-step proof checks (implies exact)
  std::vector<int> k_list;   // proof-step k values; empty means all k < ell

  std::string out_path;       // empty: caller prints report_json
  std::string snapshot_path;  // empty: no snapshot

  std::uint64_t seed = 0;  // generator seed
  int count = 0;           // generator vector count
  int dim = 0;             // generator dimension
  int rank = 1;            // lowrank generator
  double noise = 0.01;     // lowrank generator
};

struct RunResult {
  int exit_code = 0;  // 0: ok and all enabled checks passed; 1: a check failed
  std::string report_json;
};

/// Runs the stream through the sketch (plus oracle/proof checks when enabled),
/// writes the report and optional snapshot, and returns the report text.
/// Throws ParseError / ParameterError / DimensionError on bad input or config.
RunResult run(const StreamConfig& config);

}  // namespace fdsketch

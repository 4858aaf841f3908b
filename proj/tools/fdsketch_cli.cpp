// Command-line front end: ingest a vector stream (file or built-in generator),
// run the streaming covariance sketch, optionally verify it against the exact
// covariance, and emit a JSON report plus an optional FDC1 snapshot.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fdsketch/errors.hpp"
#include "fdsketch/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Streaming covariance sketch with a deterministic error-bound checker"};

  fdsketch::StreamConfig cfg;
  std::string format = "text";

  auto* input = app.add_option("--input", cfg.input_path, "Input stream file");
  auto* generate = app.add_option("--generate", cfg.generate_mode,
                                  "Built-in generator mode: gaussian | lowrank");
  input->excludes(generate);
  generate->excludes(input);

  app.add_option("--format", format, "Input file format: text | binary")
      ->check(CLI::IsMember({"text", "binary"}));
  app.add_option("--batch-size", cfg.batch_size, "Vectors per sketch update")
      ->check(CLI::PositiveNumber);
  app.add_option("--ell", cfg.ell, "Sketch parameter ell (rank bound is ell-1)")
      ->required()
      ->check(CLI::PositiveNumber);
  app.add_flag("--exact", cfg.exact, "Track the exact covariance and emit bound rows");
  app.add_flag("--proof-steps", cfg.proof_steps,
               "Per-step error-argument checks (implies --exact)");
  app.add_option("--k", cfg.k_list, "k values for --proof-steps (default: all k < ell)")
      ->delimiter(',');
  app.add_option("--out", cfg.out_path, "Write the JSON report here instead of stdout");
  app.add_option("--snapshot", cfg.snapshot_path, "Write an FDC1 sketch snapshot");
  app.add_option("--seed", cfg.seed, "Generator seed");
  app.add_option("--count", cfg.count, "Generator vector count");
  app.add_option("--dim", cfg.dim, "Generator dimension");
  app.add_option("--rank", cfg.rank, "lowrank generator: signal rank");
  app.add_option("--noise", cfg.noise, "lowrank generator: noise level");

  CLI11_PARSE(app, argc, argv);
  cfg.format = (format == "binary") ? fdsketch::StreamConfig::Format::binary
                                    : fdsketch::StreamConfig::Format::text;

  try {
    const fdsketch::RunResult result = fdsketch::run(cfg);
    if (cfg.out_path.empty()) std::cout << result.report_json;
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "fdsketch: " << e.what() << "\n";
    return 2;
  }
}

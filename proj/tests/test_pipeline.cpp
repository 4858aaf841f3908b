#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdsketch/errors.hpp"
#include "fdsketch/oracle.hpp"
#include "fdsketch/pipeline.hpp"
#include "fdsketch/serialize.hpp"
#include "fdsketch/sketch.hpp"
#include "fdsketch/stream_gen.hpp"
#include "fdsketch/stream_io.hpp"

using namespace fdsketch;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static const fs::path dir = [] {
    auto p = fs::temp_directory_path() /
             ("fdsketch_test_" + std::to_string(static_cast<unsigned>(::getpid())));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& body) {
  const fs::path path = temp_dir() / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << body;
  return path;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("tightness witness end to end") {
  const fs::path input = write_file("witness.txt", "1 0\n0 1\n");

  StreamConfig cfg;
  cfg.input_path = input.string();
  cfg.ell = 2;
  cfg.exact = true;

  const RunResult result = run(cfg);
  CHECK(result.exit_code == 0);

  const auto doc = nlohmann::json::parse(result.report_json);
  CHECK(doc["d"] == 2);
  CHECK(doc["ell"] == 2);
  CHECK(doc["steps"] == 2);
  CHECK(doc["measured_error"] == 1.0);
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["k"] == 0);
  CHECK(doc["rows"][0]["bound"] == 1.0);
  CHECK(doc["rows"][0]["pass"] == true);
  CHECK(doc["rows"][1]["bound"] == 1.0);
  CHECK(doc["rows"][1]["pass"] == true);
  CHECK(doc["pass"] == true);
}

TEST_CASE("empty input file") {
  const fs::path input = write_file("empty.txt", "# only a comment\n\n");

  StreamConfig cfg;
  cfg.input_path = input.string();
  cfg.ell = 3;
  cfg.exact = true;

  const RunResult result = run(cfg);
  CHECK(result.exit_code == 0);

  const auto doc = nlohmann::json::parse(result.report_json);
  CHECK(doc["d"] == 0);
  CHECK(doc["steps"] == 0);
  CHECK(doc["measured_error"] == 0.0);
  REQUIRE(doc["rows"].size() == 3);
  for (const auto& row : doc["rows"]) {
    CHECK(row["bound"] == 0.0);
    CHECK(row["pass"] == true);
  }
  CHECK(doc["pass"] == true);
}

TEST_CASE("text parsing accepts commas and comments, reports bad lines") {
  SUBCASE("commas and comments") {
    const fs::path input = write_file("commas.txt", "# header\n1,0\n  # indented comment\n0, 1\n");
    StreamConfig cfg;
    cfg.input_path = input.string();
    cfg.ell = 2;
    cfg.exact = true;
    const RunResult result = run(cfg);
    const auto doc = nlohmann::json::parse(result.report_json);
    CHECK(doc["steps"] == 2);
    CHECK(doc["measured_error"] == 1.0);
  }

  SUBCASE("CRLF line endings") {
    const fs::path input = write_file("crlf.txt", "1 0\r\n0 1\r\n");
    StreamConfig cfg;
    cfg.input_path = input.string();
    cfg.ell = 2;
    cfg.exact = true;
    const RunResult result = run(cfg);
    const auto doc = nlohmann::json::parse(result.report_json);
    CHECK(doc["steps"] == 2);
    CHECK(doc["measured_error"] == 1.0);
  }

  SUBCASE("malformed number carries its 1-based line") {
    const fs::path input = write_file("bad.txt", "1 0\n0 oops\n");
    StreamConfig cfg;
    cfg.input_path = input.string();
    cfg.ell = 2;
    try {
      run(cfg);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }

  SUBCASE("dimension change mid-stream") {
    const fs::path input = write_file("dimchange.txt", "1 0\n1 0 0\n");
    StreamConfig cfg;
    cfg.input_path = input.string();
    cfg.ell = 2;
    try {
      run(cfg);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }

  SUBCASE("ell larger than the stream dimension") {
    const fs::path input = write_file("small.txt", "1 0\n");
    StreamConfig cfg;
    cfg.input_path = input.string();
    cfg.ell = 3;
    CHECK_THROWS_AS(run(cfg), ParameterError);
  }
}

TEST_CASE("config validation") {
  StreamConfig cfg;
  cfg.ell = 2;
  CHECK_THROWS_AS(run(cfg), ParameterError);  // no source

  cfg.input_path = "x";
  cfg.generate_mode = "gaussian";
  CHECK_THROWS_AS(run(cfg), ParameterError);  // two sources

  cfg.input_path.clear();
  cfg.dim = 4;
  cfg.count = 4;
  cfg.batch_size = 0;
  CHECK_THROWS_AS(run(cfg), ParameterError);

  cfg.batch_size = 1;
  cfg.ell = 0;
  CHECK_THROWS_AS(run(cfg), ParameterError);

  cfg.ell = 2;
  cfg.generate_mode = "unknown";
  CHECK_THROWS_AS(run(cfg), ParameterError);
}

TEST_CASE("generator runs verify end to end") {
  StreamConfig cfg;
  cfg.generate_mode = "gaussian";
  cfg.dim = 16;
  cfg.count = 100;
  cfg.seed = 7;
  cfg.ell = 6;
  cfg.exact = true;

  const RunResult result = run(cfg);
  CHECK(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.report_json);
  CHECK(doc["steps"] == 100);
  CHECK(doc["rows"].size() == 6);
  CHECK(doc["pass"] == true);
}

TEST_CASE("proof-steps report") {
  StreamConfig cfg;
  cfg.generate_mode = "lowrank";
  cfg.dim = 8;
  cfg.count = 40;
  cfg.seed = 13;
  cfg.rank = 3;
  cfg.noise = 0.1;
  cfg.ell = 4;
  cfg.proof_steps = true;  // implies exact

  const RunResult result = run(cfg);
  CHECK(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.report_json);
  REQUIRE(doc.contains("proof_steps"));
  CHECK(doc["proof_steps"].size() == 4);
  for (const auto& step : doc["proof_steps"]) {
    CHECK(step["pass"] == true);
    CHECK(step["delta_psd"]["pass"] == true);
    CHECK(step["telescoping"]["pass"] == true);
    CHECK(step["chain"]["pass"] == true);
  }

  SUBCASE("explicit k list") {
    cfg.k_list = {0, 2};
    const RunResult picked = run(cfg);
    const auto doc2 = nlohmann::json::parse(picked.report_json);
    REQUIRE(doc2["proof_steps"].size() == 2);
    CHECK(doc2["proof_steps"][0]["k"] == 0);
    CHECK(doc2["proof_steps"][1]["k"] == 2);
  }
}

TEST_CASE("identical configs produce byte-identical reports") {
  StreamConfig cfg;
  cfg.generate_mode = "gaussian";
  cfg.dim = 12;
  cfg.count = 60;
  cfg.seed = 99;
  cfg.ell = 5;
  cfg.exact = true;
  cfg.out_path = (temp_dir() / "rep_a.json").string();

  const RunResult a = run(cfg);
  cfg.out_path = (temp_dir() / "rep_b.json").string();
  const RunResult b = run(cfg);

  CHECK(a.report_json == b.report_json);
  CHECK(read_file(temp_dir() / "rep_a.json") == read_file(temp_dir() / "rep_b.json"));
}

TEST_CASE("batch size regroups vectors without changing the exact covariance") {
  StreamSpec spec;
  spec.family = StreamFamily::gaussian;
  spec.dim = 7;
  spec.count = 23;  // deliberately not divisible by the batch sizes
  spec.seed = 3;
  const auto vectors = generate_vectors(spec);

  std::vector<ExactCovariance> accs;
  for (int batch_size : {1, 3, 5}) {
    ExactCovariance oc(7);
    for (const Batch& b : group_batches(7, vectors, batch_size)) oc.accumulate(b);
    accs.push_back(std::move(oc));
  }
  const auto base = accs[0].covariance().packed();
  for (std::size_t i = 1; i < accs.size(); ++i) {
    const auto other = accs[i].covariance().packed();
    CHECK(std::memcmp(base.data(), other.data(), base.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("binary FDV1 input matches the text route") {
  StreamSpec spec;
  spec.family = StreamFamily::gaussian;
  spec.dim = 4;
  spec.count = 9;
  spec.seed = 55;
  const auto vectors = generate_vectors(spec);

  const fs::path bin_path = temp_dir() / "stream.fdv1";
  {
    std::ofstream out(bin_path, std::ios::binary | std::ios::trunc);
    write_fdv1(out, 4, vectors);
  }
  std::ostringstream text;
  text.precision(17);
  for (const auto& x : vectors) {
    for (std::size_t i = 0; i < x.size(); ++i) text << (i ? " " : "") << x[i];
    text << "\n";
  }
  const fs::path txt_path = write_file("stream.txt", text.str());

  StreamConfig cfg;
  cfg.ell = 3;
  cfg.exact = true;
  cfg.batch_size = 2;

  cfg.input_path = bin_path.string();
  cfg.format = StreamConfig::Format::binary;
  const RunResult via_binary = run(cfg);

  cfg.input_path = txt_path.string();
  cfg.format = StreamConfig::Format::text;
  const RunResult via_text = run(cfg);

  // 17 significant digits round-trip doubles exactly.
  CHECK(via_binary.report_json == via_text.report_json);
}

TEST_CASE("stream readers reject corrupt input") {
  SUBCASE("truncated FDV1 record") {
    std::ostringstream buf;
    write_fdv1(buf, 3, {{1.0, 2.0, 3.0}});
    const std::string bytes = buf.str();
    const fs::path path = write_file("trunc.fdv1", bytes.substr(0, bytes.size() - 5));

    StreamConfig cfg;
    cfg.input_path = path.string();
    cfg.format = StreamConfig::Format::binary;
    cfg.ell = 2;
    CHECK_THROWS_AS(run(cfg), ParseError);
  }

  SUBCASE("non-finite text value") {
    const fs::path path = write_file("nan.txt", "1 0\n0 nan\n");
    StreamConfig cfg;
    cfg.input_path = path.string();
    cfg.ell = 2;
    CHECK_THROWS_AS(run(cfg), ParseError);
  }

  SUBCASE("missing file") {
    StreamConfig cfg;
    cfg.input_path = (temp_dir() / "does_not_exist.txt").string();
    cfg.ell = 2;
    CHECK_THROWS_AS(run(cfg), ParseError);
  }
}

TEST_CASE("snapshot written by a run can be reloaded") {
  StreamConfig cfg;
  cfg.generate_mode = "gaussian";
  cfg.dim = 5;
  cfg.count = 14;
  cfg.seed = 77;
  cfg.ell = 3;
  cfg.snapshot_path = (temp_dir() / "state.fdc1").string();

  const RunResult result = run(cfg);
  CHECK(result.exit_code == 0);

  const FdSketch restored = load_sketch_file(cfg.snapshot_path);
  CHECK(restored.dim() == 5);
  CHECK(restored.ell() == 3);
  CHECK(restored.steps() == 14);

  // Re-run and re-save: identical bytes.
  const std::string first = read_file(cfg.snapshot_path);
  cfg.snapshot_path = (temp_dir() / "state2.fdc1").string();
  run(cfg);
  CHECK(first == read_file(cfg.snapshot_path));
}

#ifdef FDSKETCH_CLI_PATH
TEST_CASE("command-line binary") {
  const std::string cli = FDSKETCH_CLI_PATH;

  SUBCASE("witness stream exits 0 and reports byte-identically") {
    const fs::path input = write_file("cli_witness.txt", "1 0\n0 1\n");
    const fs::path out_a = temp_dir() / "cli_a.json";
    const fs::path out_b = temp_dir() / "cli_b.json";

    const std::string base = cli + " --input " + input.string() + " --ell 2 --exact --out ";
    CHECK(std::system((base + out_a.string()).c_str()) == 0);
    CHECK(std::system((base + out_b.string()).c_str()) == 0);

    const std::string report = read_file(out_a);
    CHECK(report == read_file(out_b));
    const auto doc = nlohmann::json::parse(report);
    CHECK(doc["measured_error"] == 1.0);
    CHECK(doc["pass"] == true);
  }

  SUBCASE("malformed input exits with a usage error") {
    const fs::path input = write_file("cli_bad.txt", "1 0\nnope nope\n");
    const std::string cmd =
        cli + " --input " + input.string() + " --ell 2 --exact --out /dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CHECK(status != 0);
  }

  SUBCASE("kernel backend override is honored") {
    const fs::path input = write_file("cli_env.txt", "1 0\n0 1\n");
    const fs::path out = temp_dir() / "cli_env.json";
    const std::string cmd = "FDSKETCH_KERNELS=scalar " + cli + " --input " + input.string() +
                            " --ell 2 --exact --out " + out.string();
    CHECK(std::system(cmd.c_str()) == 0);
    const auto doc = nlohmann::json::parse(read_file(out));
    CHECK(doc["measured_error"] == 1.0);
  }
}
#endif

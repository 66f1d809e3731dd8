#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef REDCARD_CLI_PATH
#error "REDCARD_CLI_PATH must point at the redcard binary"
#endif

namespace {

struct CommandResult {
  int exit_code;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  const std::string command =
      std::string(REDCARD_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[4096];
  while (std::size_t n = std::fread(buffer, 1, sizeof buffer, pipe)) {
    output.append(buffer, n);
  }
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string temp_path(const std::string& name) {
  const char* dir = std::getenv("TMPDIR");
  return std::string(dir ? dir : "/tmp") + "/redcard_cli_" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("dla reports the closure dimension") {
  const auto result = run_cli("dla --model tfim --sites 2 --json");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"dim\": 6") != std::string::npos);
}

TEST_CASE("decompose reports the fragment sizes") {
  const auto result = run_cli("decompose --model tfim --sites 4 --json");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"fragment_sizes\": [\n    6,\n    4,\n    2,\n    0\n  ]") !=
        std::string::npos);
}

TEST_CASE("synthesize, verify and emit chain together") {
  const std::string result_path = temp_path("chain.json");
  const auto synth = run_cli(
      "synthesize --model tfim --sites 3 -J 1 -g 0.5 --seed 4 --out " +
      result_path);
  CHECK(synth.exit_code == 0);

  const auto verify =
      run_cli("verify --result " + result_path + " -t 0.1,1,10 --json");
  CHECK(verify.exit_code == 0);
  CHECK(verify.output.find("\"all_within_bound\": true") != std::string::npos);

  const auto emit = run_cli("emit --result " + result_path + " -t 1.5");
  CHECK(emit.exit_code == 0);
  CHECK(emit.output.rfind("OPENQASM 2.0;", 0) == 0);
  std::remove(result_path.c_str());
}

TEST_CASE("the compressed ansatz flows through verify and emit") {
  const std::string result_path = temp_path("compressed.json");
  const auto synth = run_cli(
      "synthesize --model tfxy --sites 3 --ansatz compressed --seed 5 --out " +
      result_path);
  CHECK(synth.exit_code == 0);

  const auto verify = run_cli("verify --result " + result_path +
                              " --compressed -t 0.5,2 --json");
  CHECK(verify.exit_code == 0);
  CHECK(verify.output.find("\"all_within_bound\": true") != std::string::npos);

  const auto emit =
      run_cli("emit --result " + result_path + " -t 1.0 --compressed");
  CHECK(emit.exit_code == 0);
  CHECK(emit.output.rfind("OPENQASM 2.0;", 0) == 0);
  std::remove(result_path.c_str());
}

TEST_CASE("equal seeds give byte-identical output") {
  const std::string a = temp_path("rep_a.json");
  const std::string b = temp_path("rep_b.json");
  const std::string args =
      "synthesize --model tfxy --sites 3 --backend shots --shots 200 --seed 11 "
      "--out ";
  CHECK(run_cli(args + a).exit_code == 0);
  CHECK(run_cli(args + b).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("csv traces are written on request") {
  const std::string result_path = temp_path("trace.json");
  const std::string csv_path = temp_path("trace.csv");
  const auto synth = run_cli("synthesize --model tfim --sites 3 --seed 2 --out " +
                             result_path + " --csv " + csv_path);
  CHECK(synth.exit_code == 0);
  CHECK(slurp(csv_path).rfind("sweep,fragment,cost,residual\n", 0) == 0);
  std::remove(result_path.c_str());
  std::remove(csv_path.c_str());
}

TEST_CASE("failures exit nonzero") {
  CHECK(run_cli("dla --model nosuch --sites 2").exit_code != 0);
  CHECK(run_cli("verify --result /nonexistent.json").exit_code != 0);
  CHECK(run_cli("synthesize --model tfim --sites 2 --backend maybe").exit_code !=
        0);
}

TEST_CASE("bench emits statistics for both methods") {
  const auto bench = run_cli(
      "bench --model tfim --sites 2 --seeds 3 --threads 1 --max-sweeps 2000");
  CHECK(bench.exit_code == 0);
  CHECK(bench.output.find("\"redcard\"") != std::string::npos);
  CHECK(bench.output.find("\"standard\"") != std::string::npos);
  CHECK(bench.output.find("\"n_converged\": 3") != std::string::npos);
}

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using namespace purelab;
using namespace purelab::cli;

namespace {

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "purelab");
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("purelab_test_" + std::to_string(std::rand()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("montecarlo flags map onto the run configuration") {
  const RunConfig config = parse({"montecarlo", "--dim", "5", "--densities", "100",
                                  "--unitaries", "100", "--seed", "42", "--out",
                                  "fig1b.csv"});
  CHECK(config.command == Command::montecarlo);
  CHECK(config.dim == 5);
  CHECK(config.densities == 100);
  CHECK(config.unitaries == 100);
  CHECK(config.seed == 42);
  CHECK(config.out == "fig1b.csv");
  CHECK(config.format == DatasetFormat::csv);
}

TEST_CASE("bare montecarlo keeps the standard defaults") {
  const RunConfig config = parse({"montecarlo"});
  CHECK(config.dim == 5);
  CHECK(config.densities == 100);
  CHECK(config.unitaries == 100);
  CHECK(config.seed == 42);
}

TEST_CASE("hbac flags parse") {
  const RunConfig config = parse({"hbac", "--n", "3", "--eps0", "0.2", "--delta", "1e-6"});
  CHECK(config.command == Command::hbac);
  CHECK(config.n == 3);
  CHECK(config.eps0 == 0.2);
  CHECK(config.delta == 1e-6);
}

TEST_CASE("no arguments is a usage error with exit status 2") {
  try {
    parse({});
    FAIL("expected UsageError");
  } catch (const UsageError& usage) {
    CHECK(usage.exit_status == 2);
    CHECK(usage.message.find("Usage") != std::string::npos);
  }
}

TEST_CASE("unknown flags and out-of-range values name the flag") {
  CHECK_THROWS_AS(parse({"montecarlo", "--bogus", "3"}), UsageError);
  try {
    parse({"montecarlo", "--dim", "1"});
    FAIL("expected UsageError");
  } catch (const UsageError& usage) {
    CHECK(usage.exit_status == 2);
    CHECK(usage.message.find("--dim") != std::string::npos);
  }
  CHECK_THROWS_AS(parse({"hbac", "--n", "40"}), UsageError);
  CHECK_THROWS_AS(parse({"montecarlo", "--format", "xml"}), UsageError);
}

TEST_CASE("help is not an error") {
  CHECK_THROWS_AS(parse({"--help"}), HelpRequested);
}

TEST_CASE("mixer-grid execution writes dataset, manifest, and summary") {
  TempDir tmp;
  RunConfig config = parse({"mixer-grid", "--steps", "21", "--out",
                            (tmp.path / "grid.csv").string()});
  std::ostringstream out, err;
  CHECK(execute(config, out, err) == 0);

  const std::string summary = out.str();
  CHECK(summary.rfind("status=ok", 0) == 0);
  CHECK(summary.find("max_gap=") != std::string::npos);
  CHECK(summary.back() == '\n');
  CHECK(summary.find('\n') == summary.size() - 1);  // single line

  const std::string csv = slurp((tmp.path / "grid.csv").string());
  CHECK(csv.rfind("alpha,beta,alpha_out,gap\r\n", 0) == 0);

  const nlohmann::json manifest =
      nlohmann::json::parse(slurp((tmp.path / "grid.csv.manifest.json").string()));
  CHECK(manifest["command"] == "mixer-grid");
  CHECK(manifest["record_count"] == 21 * 21);
  CHECK(manifest["metrics"]["max_gap"].get<double>() <= 1e-12);
}

TEST_CASE("montecarlo execution reports max_y and is seed-reproducible") {
  TempDir tmp;
  const std::string path = (tmp.path / "mc.jsonl").string();
  RunConfig config = parse({"montecarlo", "--dim", "3", "--densities", "5",
                            "--unitaries", "5", "--seed", "11", "--format", "jsonl",
                            "--out", path});
  std::ostringstream out1, err1;
  REQUIRE(execute(config, out1, err1) == 0);
  CHECK(out1.str().rfind("status=ok max_y=", 0) == 0);
  const std::string first = slurp(path);

  std::ostringstream out2, err2;
  REQUIRE(execute(config, out2, err2) == 0);
  CHECK(first == slurp(path));
  CHECK(out1.str() == out2.str());
}

TEST_CASE("distill and hbac write trajectories") {
  TempDir tmp;
  {
    RunConfig config = parse({"distill", "--n", "4", "--eps", "0.2", "--out",
                              (tmp.path / "distill.csv").string()});
    std::ostringstream out, err;
    CHECK(execute(config, out, err) == 0);
    CHECK(out.str().rfind("status=ok", 0) == 0);
    const std::string csv = slurp((tmp.path / "distill.csv").string());
    CHECK(csv.rfind("j,eps_achieved,bound\r\n", 0) == 0);
  }
  {
    RunConfig config = parse({"hbac", "--n", "3", "--eps0", "0.2", "--delta", "1e-6",
                              "--out", (tmp.path / "hbac.csv").string()});
    std::ostringstream out, err;
    CHECK(execute(config, out, err) == 0);
    CHECK(out.str().find("final_eps=") != std::string::npos);
  }
}

TEST_CASE("PURELAB_THREADS is the fallback worker-pool size") {
  TempDir tmp;
  const std::string path = (tmp.path / "mc.csv").string();
  setenv("PURELAB_THREADS", "3", 1);
  RunConfig config = parse({"montecarlo", "--dim", "2", "--densities", "2",
                            "--unitaries", "2", "--out", path});
  std::ostringstream out, err;
  REQUIRE(execute(config, out, err) == 0);
  unsetenv("PURELAB_THREADS");

  const nlohmann::json manifest =
      nlohmann::json::parse(slurp(path + ".manifest.json"));
  CHECK(manifest["config"]["threads"] == 3);
}

TEST_CASE("non-convergence exits 1 with a violation status") {
  TempDir tmp;
  RunConfig config = parse({"hbac", "--n", "4", "--eps0", "0.2", "--delta", "1e-9",
                            "--max-iterations", "2", "--out",
                            (tmp.path / "hbac.csv").string()});
  std::ostringstream out, err;
  CHECK(execute(config, out, err) == 1);
  CHECK(out.str().rfind("status=violation", 0) == 0);
}

TEST_CASE("unwritable output path exits 3") {
  RunConfig config = parse({"mixer-grid", "--steps", "5", "--out",
                            "/nonexistent_dir_for_purelab/grid.csv"});
  std::ostringstream out, err;
  CHECK(execute(config, out, err) == 3);
}

TEST_CASE("theorems suite passes and prints counts") {
  RunConfig config = parse({"theorems", "--samples", "5", "--seed", "3"});
  std::ostringstream out, err;
  CHECK(execute(config, out, err) == 0);
  CHECK(out.str().find("theorem1: 1000/1000 passed") != std::string::npos);
  CHECK(out.str().find("status=ok") != std::string::npos);
}

TEST_CASE("oracle-check reports the worst defect") {
  RunConfig config = parse({"oracle-check", "--dim", "4", "--samples", "5"});
  std::ostringstream out, err;
  CHECK(execute(config, out, err) == 0);
  CHECK(out.str().find("max_defect=") != std::string::npos);
}

TEST_SUITE_END();

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "purelab/dataset_io.hpp"

namespace purelab::cli {

enum class Command { theorems, oracle_check, montecarlo, mixer_grid, hbac, distill };

/// Fully resolved run configuration. Defaults reproduce the reference
/// scatter: d = 5, 100 densities x 100 unitaries, seed 42.
struct RunConfig {
  Command command = Command::theorems;
  std::uint64_t seed = 42;
  int dim = 5;
  int densities = 100;
  int unitaries = 100;
  int samples = 100;
  int n = 3;
  double eps0 = 0.2;
  double eps = 0.2;
  double delta = 1e-8;
  std::uint64_t max_iterations = 1'000'000;
  int grid_steps = 101;
  int threads = 0;  // 0: PURELAB_THREADS or hardware concurrency
  std::string out;  // per-command default applied when empty
  DatasetFormat format = DatasetFormat::csv;
};

/// Raised on malformed invocations; the CLI exits with the given status
/// (2 for usage errors) after printing the message.
struct UsageError {
  std::string message;
  int exit_status = 2;
};

/// Help was requested; print text and exit 0.
struct HelpRequested {
  std::string text;
};

/// Parses argv into a validated RunConfig. Unknown flags and out-of-range
/// values raise UsageError naming the offending flag.
RunConfig parse_args(int argc, const char* const* argv);

/// Runs the configured suite, writing dataset and manifest files and a
/// one-line `status=...` summary to out. Returns the process exit status:
/// 0 success, 1 bound violation or non-convergence, 3 I/O failure.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace purelab::cli

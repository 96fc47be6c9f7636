#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <thread>
#include <vector>

#include "purelab/bounds.hpp"
#include "purelab/denseop.hpp"
#include "purelab/experiments.hpp"
#include "purelab/hbac.hpp"
#include "purelab/purify.hpp"
#include "purelab/version.hpp"

namespace purelab::cli {

namespace {

using nlohmann::ordered_json;

const char* command_name(Command command) {
  switch (command) {
    case Command::theorems: return "theorems";
    case Command::oracle_check: return "oracle-check";
    case Command::montecarlo: return "montecarlo";
    case Command::mixer_grid: return "mixer-grid";
    case Command::hbac: return "hbac";
    case Command::distill: return "distill";
  }
  return "unknown";
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PURELAB_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string default_out(const RunConfig& config) {
  std::string stem;
  switch (config.command) {
    case Command::montecarlo: stem = "fig1b"; break;
    case Command::mixer_grid: stem = "mixer_grid"; break;
    case Command::hbac: stem = "hbac"; break;
    case Command::distill: stem = "distill"; break;
    default: stem = "dataset"; break;
  }
  return stem + (config.format == DatasetFormat::csv ? ".csv" : ".jsonl");
}

Spectrum random_sorted_spectrum(int d, RngStream& rng) {
  std::vector<double> values(d);
  double sum = 0.0;
  for (double& v : values) sum += (v = -std::log(1.0 - rng.uniform()));
  for (double& v : values) v /= sum;
  return sort_descending(std::move(values));
}

struct SuiteOutcome {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  double worst = 0.0;
};

// Theorem 1 on random qubit pairs: the sort channel returns exactly
// max(alpha, beta).
SuiteOutcome run_theorem1_suite(std::uint64_t seed, int samples) {
  SuiteOutcome outcome;
  RngStream rng = RngStream::derive(seed, 101);
  for (int i = 0; i < samples; ++i) {
    const double alpha = 0.5 + 0.5 * rng.uniform();
    const double beta = 0.5 + 0.5 * rng.uniform();
    const double alpha_out =
        optimal_purify(QubitSpectrum(alpha), Spectrum({beta, 1.0 - beta})).alpha_out;
    const double defect = std::abs(alpha_out - std::max(alpha, beta));
    outcome.worst = std::max(outcome.worst, defect);
    ++outcome.checks;
    if (defect > 1e-12) ++outcome.failures;
  }
  return outcome;
}

// Theorem 2 soundness plus the tightness dichotomy on random instances.
SuiteOutcome run_theorem2_suite(std::uint64_t seed, int samples) {
  SuiteOutcome outcome;
  for (int d = 2; d <= 6; ++d) {
    RngStream rng = RngStream::derive(seed, 200 + d);
    for (int i = 0; i < samples; ++i) {
      const double alpha = 0.5 + 0.5 * rng.uniform();
      const QubitSpectrum target(alpha);
      const Spectrum aux = random_sorted_spectrum(d, rng);
      const BoundReport report = theorem2_bound(target, aux);
      const double alpha_out = optimal_purify(target, aux).alpha_out;
      ++outcome.checks;
      const double excess = alpha_out - report.bound_alpha;
      outcome.worst = std::max(outcome.worst, excess);
      bool ok = excess <= 1e-12;
      if (report.tight) {
        ok = ok && std::abs(alpha_out - report.bound_alpha) <= 1e-12;
      } else {
        ok = ok && alpha_out < report.bound_alpha;
      }
      if (!ok) ++outcome.failures;
    }
  }
  return outcome;
}

// Brute-force oracle versus the sort channel and the crossing formula.
SuiteOutcome run_oracle_suite(std::uint64_t seed, int dim_lo, int dim_hi, int samples) {
  SuiteOutcome outcome;
  for (int d = dim_lo; d <= dim_hi; ++d) {
    RngStream rng = RngStream::derive(seed, 300 + d);
    for (int s = 0; s < samples; ++s) {
      const Spectrum aux = random_sorted_spectrum(d, rng);
      for (int k = 0; k <= 20; ++k) {
        const double alpha = 0.5 + 0.5 * k / 20.0;
        const QubitSpectrum target(alpha);
        const CrossingDecomposition dec = optimal_purify(target, aux);
        const double brute = brute_force_optimal(target, aux);
        const double defect = std::abs(brute - dec.alpha_out);
        const double formula_defect =
            std::abs(dec.alpha_out - (alpha * dec.delta2 + dec.delta1));
        outcome.worst = std::max({outcome.worst, defect, formula_defect});
        ++outcome.checks;
        if (defect > 1e-12 || formula_defect != 0.0) ++outcome.failures;
      }
    }
  }
  return outcome;
}

int run_theorems(const RunConfig& config, std::ostream& out) {
  const SuiteOutcome t1 = run_theorem1_suite(config.seed, 1000);
  const SuiteOutcome t2 = run_theorem2_suite(config.seed, 1000);
  const SuiteOutcome oracle = run_oracle_suite(config.seed, 2, 5, config.samples);

  out << "theorem1: " << (t1.checks - t1.failures) << "/" << t1.checks
      << " passed (worst defect " << format_double(t1.worst) << ")\n";
  out << "theorem2: " << (t2.checks - t2.failures) << "/" << t2.checks
      << " passed (worst excess " << format_double(t2.worst) << ")\n";
  out << "oracle:   " << (oracle.checks - oracle.failures) << "/" << oracle.checks
      << " passed (worst defect " << format_double(oracle.worst) << ")\n";

  const std::uint64_t failures = t1.failures + t2.failures + oracle.failures;
  out << "status=" << (failures == 0 ? "ok" : "violation")
      << " checks=" << (t1.checks + t2.checks + oracle.checks)
      << " failures=" << failures << "\n";
  return failures == 0 ? 0 : 1;
}

int run_oracle_check(const RunConfig& config, std::ostream& out) {
  const SuiteOutcome oracle =
      run_oracle_suite(config.seed, config.dim, config.dim, config.samples);
  out << "oracle-check d=" << config.dim << ": "
      << (oracle.checks - oracle.failures) << "/" << oracle.checks
      << " passed (worst defect " << format_double(oracle.worst) << ")\n";
  out << "status=" << (oracle.failures == 0 ? "ok" : "violation")
      << " checks=" << oracle.checks << " max_defect=" << format_double(oracle.worst)
      << "\n";
  return oracle.failures == 0 ? 0 : 1;
}

int run_montecarlo(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string out_path = config.out.empty() ? default_out(config) : config.out;
  Fig1bResult result;
  try {
    result = run_fig1b(config.dim, config.densities, config.unitaries, config.seed,
                       resolve_threads(config.threads));
  } catch (const BoundViolationError& violation) {
    err << violation.what() << "\n";
    out << "status=violation max_y=" << format_double(violation.record().y) << "\n";
    return 1;
  }

  if (result.rejected_samples > 0) {
    err << "redrew " << result.rejected_samples
        << " near-pure states below the 1e-12 eigenvalue floor\n";
  }

  const ordered_json config_json{{"dim", config.dim},
                                 {"densities", config.densities},
                                 {"unitaries", config.unitaries},
                                 {"threads", resolve_threads(config.threads)},
                                 {"format", config.format == DatasetFormat::csv ? "csv" : "jsonl"},
                                 {"min_eigenvalue", 1e-12},
                                 {"sampling",
                                  "independent target and auxiliary; Hilbert-Schmidt states, "
                                  "Haar unitaries"}};
  ordered_json metrics{{"max_y", result.max_y},
                       {"rejected_samples", result.rejected_samples}};
  if (result.witness) {
    metrics["witness_density_index"] = result.witness->density_index;
    metrics["witness_y"] = result.witness->y;
  }

  write_text_file(out_path, render_dataset(result.records, config.format));
  write_text_file(out_path + ".manifest.json",
                  render_manifest("montecarlo", config_json, config.seed,
                                  result.records.size(), metrics));

  out << "status=ok max_y=" << format_double(result.max_y)
      << " records=" << result.records.size() << " out=" << out_path << "\n";
  return 0;
}

int run_mixer(const RunConfig& config, std::ostream& out) {
  const std::string out_path = config.out.empty() ? default_out(config) : config.out;
  const std::vector<MixerGridRecord> records = run_mixer_grid(config.grid_steps);
  double max_gap = -1.0;
  for (const MixerGridRecord& r : records) max_gap = std::max(max_gap, r.gap);

  const ordered_json config_json{{"steps", config.grid_steps},
                                 {"format", config.format == DatasetFormat::csv ? "csv" : "jsonl"}};
  const ordered_json metrics{{"max_gap", max_gap}};
  write_text_file(out_path, render_dataset(records, config.format));
  write_text_file(out_path + ".manifest.json",
                  render_manifest("mixer-grid", config_json, config.seed,
                                  records.size(), metrics));

  const bool ok = max_gap <= 1e-12;
  out << "status=" << (ok ? "ok" : "violation") << " max_gap=" << format_double(max_gap)
      << " records=" << records.size() << " out=" << out_path << "\n";
  return ok ? 0 : 1;
}

int run_hbac_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::string out_path = config.out.empty() ? default_out(config) : config.out;
  std::vector<HbacRunRecord> records;
  try {
    records = run_hbac(config.n, Polarization(config.eps0), config.delta, config.seed,
                       RecursiveOptions{config.max_iterations});
  } catch (const ConvergenceError& failure) {
    err << failure.what() << "\n";
    out << "status=violation iterations=" << failure.trajectory().size() << "\n";
    return 1;
  }

  const HbacRunRecord& final = records.back();
  const ordered_json config_json{{"n", config.n},
                                 {"eps0", config.eps0},
                                 {"delta", config.delta},
                                 {"max_iterations", config.max_iterations},
                                 {"format", config.format == DatasetFormat::csv ? "csv" : "jsonl"}};
  const ordered_json metrics{{"final_eps", final.eps_n},
                             {"limit", final.limit},
                             {"distance_to_limit", final.distance_to_limit},
                             {"iterations", final.iteration}};
  write_text_file(out_path, render_dataset(records, config.format));
  write_text_file(out_path + ".manifest.json",
                  render_manifest("hbac", config_json, config.seed, records.size(), metrics));

  out << "status=ok final_eps=" << format_double(final.eps_n)
      << " limit=" << format_double(final.limit)
      << " iterations=" << final.iteration << " out=" << out_path << "\n";
  return 0;
}

int run_distill(const RunConfig& config, std::ostream& out) {
  const std::string out_path = config.out.empty() ? default_out(config) : config.out;
  const std::vector<DistillationRecord> records =
      run_closed_distillation(config.n, Polarization(config.eps));
  double max_excess = -1.0;
  for (const DistillationRecord& r : records) {
    max_excess = std::max(max_excess, r.eps_achieved - r.bound);
  }

  const ordered_json config_json{{"n", config.n},
                                 {"eps", config.eps},
                                 {"format", config.format == DatasetFormat::csv ? "csv" : "jsonl"}};
  const ordered_json metrics{{"max_excess", max_excess}};
  write_text_file(out_path, render_dataset(records, config.format));
  write_text_file(out_path + ".manifest.json",
                  render_manifest("distill", config_json, config.seed, records.size(), metrics));

  const bool ok = max_excess <= 1e-12;
  out << "status=" << (ok ? "ok" : "violation")
      << " max_excess=" << format_double(max_excess) << " records=" << records.size()
      << " out=" << out_path << "\n";
  return ok ? 0 : 1;
}

}  // namespace

RunConfig parse_args(int argc, const char* const* argv) {
  RunConfig config;
  CLI::App app{"purelab: purification bounds, sort channels, and cooling limits"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::string format_name = "csv";
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "random seed (fully determines output)")
        ->capture_default_str();
    sub->add_option("--out", config.out, "output dataset path");
    sub->add_option("--format", format_name, "dataset format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    sub->add_option("--threads", config.threads, "worker threads (default: PURELAB_THREADS or all cores)")
        ->check(CLI::Range(1, 4096));
  };

  CLI::App* theorems = app.add_subcommand("theorems", "run theorem and oracle property suites");
  theorems->add_option("--samples", config.samples, "auxiliary spectra per dimension")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  add_common(theorems);

  CLI::App* oracle = app.add_subcommand("oracle-check", "brute-force vs sort comparison");
  oracle->add_option("--dim", config.dim, "auxiliary dimension")
      ->check(CLI::Range(2, 5))
      ->capture_default_str();
  oracle->add_option("--samples", config.samples, "auxiliary spectra")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  add_common(oracle);

  CLI::App* montecarlo = app.add_subcommand("montecarlo", "random purification scatter against the no-go ceiling");
  montecarlo->add_option("--dim", config.dim, "auxiliary dimension")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  montecarlo->add_option("--densities", config.densities, "random density-matrix pairs")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  montecarlo->add_option("--unitaries", config.unitaries, "random purification unitaries")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  add_common(montecarlo);

  CLI::App* mixer = app.add_subcommand("mixer-grid", "mixer-channel lower-bound grid");
  mixer->add_option("--steps", config.grid_steps, "grid resolution per axis")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  add_common(mixer);

  CLI::App* hbac = app.add_subcommand("hbac", "open-system recursive purification");
  hbac->add_option("--n", config.n, "qubit count")->check(CLI::Range(2, 12))->capture_default_str();
  hbac->add_option("--eps0", config.eps0, "reset polarization")
      ->check(CLI::Range(0.0, 100.0))
      ->capture_default_str();
  hbac->add_option("--delta", config.delta, "convergence threshold (trace distance)")
      ->check(CLI::Range(1e-15, 1.0))
      ->capture_default_str();
  hbac->add_option("--max-iterations", config.max_iterations, "outer iteration cap")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1'000'000'000}))
      ->capture_default_str();
  add_common(hbac);

  CLI::App* distill = app.add_subcommand("distill", "closed-system purity distillation");
  distill->add_option("--n", config.n, "qubit count")->check(CLI::Range(2, 6))->capture_default_str();
  distill->add_option("--eps", config.eps, "initial polarization of every qubit")
      ->check(CLI::Range(0.0, 100.0))
      ->capture_default_str();
  add_common(distill);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& error) {
    std::string message = error.what();
    if (app.get_subcommands().empty()) {
      message += "\n\n" + app.help();
    }
    throw UsageError{message, 2};
  }

  if (theorems->parsed()) config.command = Command::theorems;
  if (oracle->parsed()) config.command = Command::oracle_check;
  if (montecarlo->parsed()) config.command = Command::montecarlo;
  if (mixer->parsed()) config.command = Command::mixer_grid;
  if (hbac->parsed()) config.command = Command::hbac;
  if (distill->parsed()) config.command = Command::distill;
  config.format = format_name == "jsonl" ? DatasetFormat::jsonl : DatasetFormat::csv;
  return config;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::theorems: return run_theorems(config, out);
      case Command::oracle_check: return run_oracle_check(config, out);
      case Command::montecarlo: return run_montecarlo(config, out, err);
      case Command::mixer_grid: return run_mixer(config, out);
      case Command::hbac: return run_hbac_command(config, out, err);
      case Command::distill: return run_distill(config, out);
    }
  } catch (const std::ios_base::failure& io_error) {
    err << "i/o error: " << io_error.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace purelab::cli

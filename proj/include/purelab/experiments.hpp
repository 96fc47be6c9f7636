#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "purelab/hbac.hpp"
#include "purelab/spectra.hpp"

namespace purelab {

/// One purification sample: a random qubit target and d-level auxiliary
/// processed by a Haar unitary. x and y are the minimum and output
/// polarizations normalized to the larger initial polarization.
struct Fig1bRecord {
  int density_index = 0;
  int unitary_index = 0;
  double eps_target_in = 0.0;
  double eps_aux_in = 0.0;
  double eps_out = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// The same sample pipeline with the Haar unitary replaced by the optimal
/// sort permutation, on a pair whose target starts more polarized; such a
/// pair saturates the bound (y = 1).
struct TightWitness {
  int density_index = 0;
  double y = 0.0;
};

struct Fig1bResult {
  std::vector<Fig1bRecord> records;
  double max_y = 0.0;
  std::uint64_t rejected_samples = 0;
  std::optional<TightWitness> witness;
};

struct MixerGridRecord {
  double alpha = 0.5;
  double beta = 0.5;
  double alpha_out = 0.5;
  double gap = 0.0;
};

struct HbacRunRecord {
  int n = 2;
  double eps0 = 0.0;
  double delta = 0.0;
  std::uint64_t iteration = 0;
  double eps_n = 0.0;
  double limit = 0.0;
  double distance_to_limit = 0.0;
};

struct DistillationRecord {
  int j = 2;
  double eps_achieved = 0.0;
  double bound = 0.0;
};

/// Raised when a sample lands above the proven ceiling; this would
/// falsify the bound, so it is an error, not a data point.
class BoundViolationError : public std::runtime_error {
public:
  BoundViolationError(const std::string& message, Fig1bRecord record)
      : std::runtime_error(message), record_(record) {}

  const Fig1bRecord& record() const { return record_; }

private:
  Fig1bRecord record_;
};

/// Monte-Carlo purification scatter: n_densities random (target, aux)
/// pairs times n_unitaries Haar unitaries, all derived deterministically
/// from the seed. States whose smallest eigenvalue falls below 1e-12 are
/// redrawn (counted in rejected_samples) so every polarization is finite.
/// Throws BoundViolationError if any record exceeds y = 1 + 1e-9.
Fig1bResult run_fig1b(int d, int n_densities, int n_unitaries,
                      std::uint64_t seed, int threads = 1);

/// Evaluates the mixer channel on a steps x steps grid over [1/2, 1]^2.
std::vector<MixerGridRecord> run_mixer_grid(int steps);

/// Trajectory of the open-system recursion, one record per outer
/// iteration of the top level.
std::vector<HbacRunRecord> run_hbac(int n, Polarization eps0, double delta,
                                    std::uint64_t seed,
                                    const RecursiveOptions& options = {});

/// Closed-system distillation: for each j in 2..n, one sort of the 2^j
/// diagonal of rho_eps tensored j times, reporting achieved eps_j against
/// the (j-1)*eps ceiling.
std::vector<DistillationRecord> run_closed_distillation(int n, Polarization eps);

}  // namespace purelab

#pragma once

#include <vector>

#include "purelab/spectra.hpp"

namespace purelab {

enum class BindingBranch { target_dominates, auxiliary_dominates };

/// Closed-form purification ceiling: the bound as an eigenvalue and as a
/// polarization (the two are the same statement through the qubit map),
/// whether some permutation channel attains it, and which side binds.
struct BoundReport {
  double bound_alpha = 0.5;
  Polarization bound_polarization = Polarization(0.0);
  bool tight = true;
  BindingBranch binding_branch = BindingBranch::target_dominates;
};

/// Two-qubit no-go bound: alpha_out <= max(alpha, beta). Always attained
/// (identity when the target dominates, swap otherwise).
BoundReport theorem1_bound(QubitSpectrum target, QubitSpectrum aux);

/// General bound for a d-level auxiliary: alpha_out <= max(alpha,
/// beta_1/(beta_1+beta_d)); equivalently eps_out <= max(eps_T, eps_A).
/// Attained exactly when the target side binds, and always at d = 2
/// where the swap reaches the auxiliary branch too.
BoundReport theorem2_bound(QubitSpectrum target, const Spectrum& aux);

/// Closed-system distillation ceilings for qubits j = 2..n when every
/// qubit starts at polarization eps: eps_j <= (j-1)*eps.
std::vector<Polarization> distillation_bounds(int n, Polarization eps);

/// True iff alpha_out respects the bound within the 1e-9 checking slack.
bool check_no_go(double alpha_out, const BoundReport& report);

}  // namespace purelab

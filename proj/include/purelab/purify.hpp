#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "purelab/spectra.hpp"

namespace purelab {

/// Summary of the optimal sort on a joint spectrum: m crossings, the three
/// auxiliary block sums delta1 = beta_1+..+beta_m, delta2 = beta_{m+1}+..+
/// beta_{d-m}, delta3 = beta_{d-m+1}+..+beta_d, and the resulting
/// alpha_out = alpha*delta2 + delta1.
struct CrossingDecomposition {
  int m = 0;
  double delta1 = 0.0;
  double delta2 = 1.0;
  double delta3 = 0.0;
  double alpha_out = 0.5;
};

/// Number of block-2 entries among the d largest entries of the joint
/// spectrum; ties count in favor of block 1 (no crossing on equality).
int crossing_count(QubitSpectrum target, const Spectrum& aux);

/// The optimal diagonal purification: sorts the joint spectrum and returns
/// the crossing decomposition. alpha_out never falls below alpha.
CrossingDecomposition optimal_purify(QubitSpectrum target, const Spectrum& aux);

/// Exhaustive oracle: the maximum, over every permutation of the 2d joint
/// entries, of the mass landing in the first block. Every permutation's
/// first-block sum depends only on which d entries it selects, so the
/// (2d)! search collapses to all C(2d, d) subsets, enumerated directly.
/// Requires 2d <= 10.
double brute_force_optimal(QubitSpectrum target, const Spectrum& aux);

/// The two-qubit counterexample channel that maps the joint spectrum to
/// {ab, (1-a)(1-b), a(1-b), (1-a)b}: alpha_out = a*b + (1-a)*(1-b), which
/// can drop below min(a, b).
double mixer_channel(QubitSpectrum target, QubitSpectrum aux);

struct PermutationResult {
  std::vector<double> values;
  double alpha_out = 0.0;
};

/// Applies a permutation channel to the joint spectrum: values[i] moves to
/// position with perm[i] naming the source index, and alpha_out is the sum
/// of the first d entries afterwards.
PermutationResult apply_permutation(const JointSpectrum& joint,
                                    std::span<const std::size_t> perm);

}  // namespace purelab

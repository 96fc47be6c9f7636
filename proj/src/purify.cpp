#include "purelab/purify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "purelab/detail/kahan.hpp"

namespace purelab {

using detail::kahan_sum;

int crossing_count(QubitSpectrum target, const Spectrum& aux) {
  // Merge the two sorted blocks and count how many of the d selected heads
  // come from block 2. Ties resolve toward block 1.
  const std::size_t d = aux.dim();
  const double a = target.alpha();
  const double c = target.complement();
  std::size_t i = 0, j = 0;
  int m = 0;
  for (std::size_t taken = 0; taken < d; ++taken) {
    if (i < d && (j >= d || a * aux[i] >= c * aux[j])) {
      ++i;
    } else {
      ++j;
      ++m;
    }
  }
  return m;
}

CrossingDecomposition optimal_purify(QubitSpectrum target, const Spectrum& aux) {
  const std::size_t d = aux.dim();
  const int m = crossing_count(target, aux);
  if (static_cast<std::size_t>(2 * m) > d) {
    throw std::logic_error("crossing count exceeded d/2");
  }

  const std::span<const double> beta{aux.values()};
  const double delta1 = kahan_sum(beta.first(m));
  const double delta3 = kahan_sum(beta.last(m));
  // Complement form keeps the three block sums consistent and makes the
  // no-crossing case return alpha unchanged, bit for bit.
  const double delta2 = 1.0 - delta1 - delta3;

  CrossingDecomposition out;
  out.m = m;
  out.delta1 = delta1;
  out.delta2 = delta2;
  out.delta3 = delta3;
  out.alpha_out = target.alpha() * delta2 + delta1;

  // Cross-check against the sorted joint spectrum itself.
  const JointSpectrum joint(target, aux);
  std::vector<double> sorted = joint.values();
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<double>());
  const double top_mass = kahan_sum(std::span<const double>{sorted}.first(d));
  if (std::abs(top_mass - out.alpha_out) > 1e-12) {
    throw std::logic_error("crossing decomposition disagrees with the sort");
  }
  if (out.alpha_out < target.alpha() - 1e-15) {
    throw std::logic_error("sorting decreased the top block mass");
  }
  return out;
}

double brute_force_optimal(QubitSpectrum target, const Spectrum& aux) {
  const std::size_t d = aux.dim();
  const std::size_t n = 2 * d;
  if (n > 10) {
    throw std::invalid_argument("brute_force_optimal supports joint sizes up to 10");
  }
  const JointSpectrum joint(target, aux);
  const std::vector<double>& values = joint.values();

  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != static_cast<int>(d)) continue;
    double sum = 0.0;
    for (std::size_t z = 0; z < n; ++z) {
      if (mask & (1u << z)) sum += values[z];
    }
    best = std::max(best, sum);
  }
  return best;
}

double mixer_channel(QubitSpectrum target, QubitSpectrum aux) {
  return target.alpha() * aux.alpha() + target.complement() * aux.complement();
}

PermutationResult apply_permutation(const JointSpectrum& joint,
                                    std::span<const std::size_t> perm) {
  const std::size_t n = joint.values().size();
  if (perm.size() != n) {
    throw std::invalid_argument("permutation size does not match joint spectrum");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) {
      throw std::invalid_argument("permutation is not a bijection on the indices");
    }
    seen[p] = true;
  }

  PermutationResult out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = joint.values()[perm[i]];
  out.alpha_out =
      kahan_sum(std::span<const double>{out.values}.first(joint.block_dim()));
  return out;
}

}  // namespace purelab

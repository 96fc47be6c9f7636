#include "purelab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

#include "purelab/bounds.hpp"
#include "purelab/denseop.hpp"
#include "purelab/hbac.hpp"
#include "purelab/purify.hpp"

namespace purelab {

namespace {

constexpr double kMinEigenvalue = 1e-12;

struct SampledState {
  DensityOperator rho;
  Spectrum spectrum;
  double eps;
  std::uint64_t rejections;
};

// Draws until the smallest eigenvalue clears the floor, so generalized
// polarization stays finite.
SampledState sample_state(Eigen::Index dim, RngStream& rng) {
  std::uint64_t rejections = 0;
  for (;;) {
    DensityOperator rho = random_density(dim, rng);
    Spectrum spectrum = eigenvalues_sorted(rho);
    if (spectrum.smallest() >= kMinEigenvalue) {
      const double eps = generalized_polarization(spectrum).value();
      return {std::move(rho), std::move(spectrum), eps, rejections};
    }
    ++rejections;
  }
}

// Permutation that sorts the given values non-increasing (stable).
std::vector<std::size_t> sorting_permutation(const std::vector<double>& values) {
  std::vector<std::size_t> perm(values.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return perm;
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const int workers = std::min(threads, count);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          if (failed.load()) return;
          body(i);
        }
      } catch (...) {
        const std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

Fig1bResult run_fig1b(int d, int n_densities, int n_unitaries,
                      std::uint64_t seed, int threads) {
  if (d < 2) throw std::invalid_argument("auxiliary dimension must be >= 2");
  if (n_densities < 1 || n_unitaries < 1) {
    throw std::invalid_argument("sample counts must be >= 1");
  }

  // Independent target and auxiliary draws per density index, each from
  // its own derived stream.
  struct Pair {
    DensityOperator joint;
    double eps_target;
    double eps_aux;
    Spectrum aux_spectrum;
    QubitSpectrum target_spectrum;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n_densities);
  std::uint64_t rejected = 0;
  for (int i = 0; i < n_densities; ++i) {
    RngStream target_rng = RngStream::derive(seed, 1, i);
    RngStream aux_rng = RngStream::derive(seed, 2, i);
    SampledState target = sample_state(2, target_rng);
    SampledState aux = sample_state(d, aux_rng);
    rejected += target.rejections + aux.rejections;
    pairs.push_back({tensor(target.rho, aux.rho), target.eps, aux.eps,
                     aux.spectrum, QubitSpectrum(target.spectrum.largest())});
  }

  std::vector<UnitaryOperator> unitaries;
  unitaries.reserve(n_unitaries);
  for (int j = 0; j < n_unitaries; ++j) {
    RngStream u_rng = RngStream::derive(seed, 3, j);
    unitaries.push_back(random_unitary(2 * d, u_rng));
  }

  Fig1bResult result;
  result.rejected_samples = rejected;
  result.records.resize(static_cast<std::size_t>(n_densities) * n_unitaries);

  parallel_for(n_densities * n_unitaries, threads, [&](int flat) {
    const int i = flat / n_unitaries;
    const int j = flat % n_unitaries;
    const Pair& pair = pairs[i];

    const DensityOperator out = apply_purification(pair.joint, unitaries[j], 2, d);
    const double eps_out = generalized_polarization(eigenvalues_sorted(out)).value();

    Fig1bRecord record;
    record.density_index = i;
    record.unitary_index = j;
    record.eps_target_in = pair.eps_target;
    record.eps_aux_in = pair.eps_aux;
    record.eps_out = eps_out;
    const double max_eps = std::max(pair.eps_target, pair.eps_aux);
    record.x = std::min(pair.eps_target, pair.eps_aux) / max_eps;
    record.y = eps_out / max_eps;
    result.records[flat] = record;
  });

  for (const Fig1bRecord& record : result.records) {
    result.max_y = std::max(result.max_y, record.y);
    if (record.y > 1.0 + 1e-9) {
      throw BoundViolationError(
          "sample exceeded the purification ceiling (y = " +
              std::to_string(record.y) + ")",
          record);
    }
  }

  // Tightness witness: first pair whose target starts more polarized,
  // pushed through the optimal sort permutation on the diagonalized joint
  // spectrum. The bound binds on the target there, so y must reach 1.
  for (int i = 0; i < n_densities; ++i) {
    const Pair& pair = pairs[i];
    if (pair.eps_target <= pair.eps_aux) continue;

    const JointSpectrum joint(pair.target_spectrum, pair.aux_spectrum);
    const DensityOperator joint_diag = DensityOperator::diagonal(joint.values());
    const UnitaryOperator sort_u =
        UnitaryOperator::permutation(sorting_permutation(joint.values()));
    const Spectrum out = eigenvalues_sorted(apply_purification(joint_diag, sort_u, 2, d));
    const double eps_out = generalized_polarization(out).value();
    result.witness = TightWitness{i, eps_out / pair.eps_target};
    break;
  }

  return result;
}

std::vector<MixerGridRecord> run_mixer_grid(int steps) {
  if (steps < 2) throw std::invalid_argument("grid needs at least 2 steps");
  std::vector<MixerGridRecord> records;
  records.reserve(static_cast<std::size_t>(steps) * steps);
  for (int i = 0; i < steps; ++i) {
    const double alpha = 0.5 + 0.5 * static_cast<double>(i) / (steps - 1);
    for (int j = 0; j < steps; ++j) {
      const double beta = 0.5 + 0.5 * static_cast<double>(j) / (steps - 1);
      const double alpha_out = mixer_channel(QubitSpectrum(alpha), QubitSpectrum(beta));
      records.push_back({alpha, beta, alpha_out, alpha_out - std::min(alpha, beta)});
    }
  }
  return records;
}

std::vector<HbacRunRecord> run_hbac(int n, Polarization eps0, double delta,
                                    std::uint64_t /*seed: deterministic run*/,
                                    const RecursiveOptions& options) {
  std::vector<HbacIterationRecord> trace;
  recursive_purify(n, eps0, delta, options, &trace);

  const double limit = hbac_limit(n, eps0).value();
  std::vector<HbacRunRecord> records;
  records.reserve(trace.size());
  for (const HbacIterationRecord& it : trace) {
    records.push_back({n, eps0.value(), delta, it.iteration, it.eps_n, limit,
                       limit - it.eps_n});
  }
  return records;
}

std::vector<DistillationRecord> run_closed_distillation(int n, Polarization eps) {
  if (n < 2 || n > 6) {
    throw std::invalid_argument("closed distillation supports 2 <= n <= 6");
  }
  if (!eps.is_finite()) {
    throw std::domain_error("distillation requires finite polarization");
  }
  std::vector<DistillationRecord> records;
  records.reserve(n - 1);
  for (int j = 2; j <= n; ++j) {
    const HbacState sorted = sort_step(HbacState::product(j, eps));
    const double achieved = target_polarization(sorted, j).value();
    records.push_back({j, achieved, (j - 1) * eps.value()});
  }
  return records;
}

}  // namespace purelab

#include "purelab/hbac.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "purelab/detail/kahan.hpp"

namespace purelab {

namespace {

void validate_diag(int n, const std::vector<double>& diag) {
  if (n < 2) {
    throw std::invalid_argument("HBAC state needs at least two qubits");
  }
  if (n > 16) {
    throw std::invalid_argument("HBAC state capped at 16 qubits");
  }
  if (diag.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("diagonal size must be 2^n");
  }
  for (double v : diag) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("diagonal entries must be non-negative");
    }
  }
  if (std::abs(detail::kahan_sum(diag) - 1.0) > kProbabilitySumTol) {
    throw std::invalid_argument("diagonal entries must sum to 1");
  }
}

}  // namespace

HbacState::HbacState(int n, std::vector<double> diag, Polarization eps0,
                     std::uint64_t iterations)
    : n_(n), diag_(std::move(diag)), eps0_(eps0), iterations_(iterations) {
  validate_diag(n_, diag_);
}

HbacState HbacState::product(int n, Polarization eps0) {
  const QubitSpectrum q = qubit_from_polarization(eps0);
  std::vector<double> diag{1.0};
  for (int k = 0; k < n; ++k) {
    std::vector<double> next(diag.size() * 2);
    for (std::size_t i = 0; i < diag.size(); ++i) {
      next[2 * i] = diag[i] * q.alpha();
      next[2 * i + 1] = diag[i] * q.complement();
    }
    diag = std::move(next);
  }
  return HbacState(n, std::move(diag), eps0);
}

double trace_distance(const HbacState& a, const HbacState& b) {
  if (a.diag().size() != b.diag().size()) {
    throw std::invalid_argument("trace distance needs equal dimensions");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.diag().size(); ++i) {
    sum += std::abs(a.diag()[i] - b.diag()[i]);
  }
  return 0.5 * sum;
}

HbacState reset_q1(const HbacState& s) {
  const QubitSpectrum q = qubit_from_polarization(s.eps0());
  const std::size_t half = s.diag().size() / 2;
  std::vector<double> next(s.diag().size());
  for (std::size_t k = 0; k < half; ++k) {
    const double rest = s.diag()[2 * k] + s.diag()[2 * k + 1];
    next[2 * k] = rest * q.alpha();
    next[2 * k + 1] = rest * q.complement();
  }
  return HbacState(s.n(), std::move(next), s.eps0(), s.iterations());
}

HbacState sort_step(const HbacState& s) {
  std::vector<double> next = s.diag();
  std::stable_sort(next.begin(), next.end(), std::greater<double>());
  return HbacState(s.n(), std::move(next), s.eps0(), s.iterations());
}

Polarization target_polarization(const HbacState& s, int j) {
  if (j < 1 || j > s.n()) {
    throw std::invalid_argument("qubit index out of range");
  }
  const std::size_t bit = std::size_t{1} << (j - 1);
  double p0 = 0.0, p1 = 0.0;
  for (std::size_t i = 0; i < s.diag().size(); ++i) {
    ((i & bit) == 0 ? p0 : p1) += s.diag()[i];
  }
  const double hi = std::max(p0, p1);
  const double lo = std::min(p0, p1);
  if (lo == 0.0) return Polarization::infinite();
  return Polarization(std::max(0.0, 0.5 * std::log(hi / lo)));
}

HbacState recursive_purify(int n, Polarization eps0, double delta,
                           const RecursiveOptions& options,
                           std::vector<HbacIterationRecord>* trace) {
  if (n < 2 || n > options.max_qubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  if (!eps0.is_finite()) {
    throw std::domain_error("reset polarization must be finite");
  }
  if (!(delta > 0.0)) {
    throw std::invalid_argument("delta must be positive");
  }

  if (n == 2) {
    HbacState base = HbacState::product(2, eps0);
    if (trace != nullptr) {
      trace->push_back({0, target_polarization(base, 2).value(), 0.0});
    }
    return base;
  }

  // The converged (n-1)-qubit auxiliary is state-independent, so one
  // recursive purification per level serves every outer iteration below.
  const HbacState aux = recursive_purify(n - 1, eps0, delta, options, nullptr);

  HbacState state = HbacState::product(n, eps0);
  std::vector<HbacIterationRecord> local_trace;
  const double limit = hbac_limit(n, eps0).value();

  for (std::uint64_t iteration = 1; iteration <= options.max_iterations;
       ++iteration) {
    const HbacState sorted = sort_step(state);
    // Marginal of Q_n, then recombine with the re-purified auxiliary.
    double a = 0.0;
    const std::size_t half = sorted.diag().size() / 2;
    for (std::size_t i = 0; i < half; ++i) a += sorted.diag()[i];
    a = std::min(a, 1.0);

    std::vector<double> next(sorted.diag().size());
    for (std::size_t i = 0; i < half; ++i) {
      next[i] = a * aux.diag()[i];
      next[half + i] = (1.0 - a) * aux.diag()[i];
    }
    HbacState recombined(n, std::move(next), eps0, iteration);

    const double distance = trace_distance(recombined, state);
    const double eps_n = target_polarization(recombined, n).value();
    local_trace.push_back({iteration, eps_n, distance});
    if (eps_n > limit + 1e-9) {
      throw std::logic_error("HBAC trajectory exceeded the cooling limit");
    }
    state = std::move(recombined);

    if (distance < delta) {
      if (trace != nullptr) *trace = std::move(local_trace);
      return state;
    }
  }

  if (trace != nullptr) *trace = local_trace;
  throw ConvergenceError(
      "recursive purification did not converge within " +
          std::to_string(options.max_iterations) + " iterations",
      std::move(local_trace));
}

Polarization hbac_limit(int n, Polarization eps0) {
  if (n < 2) {
    throw std::invalid_argument("HBAC limit needs at least two qubits");
  }
  if (!eps0.is_finite()) return Polarization::infinite();
  return Polarization(std::ldexp(eps0.value(), n - 2));
}

}  // namespace purelab

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "purelab/bounds.hpp"
#include "purelab/purify.hpp"

using namespace purelab;

namespace {

Spectrum random_sorted_spectrum(int d, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> values(d);
  double sum = 0.0;
  for (double& v : values) sum += (v = -std::log(1.0 - unif(eng)));
  for (double& v : values) v /= sum;
  return sort_descending(std::move(values));
}

// Sorted spectrum of a (j-1)-fold tensor power of {a, 1-a}.
Spectrum qubit_tensor_power(double a, int copies) {
  std::vector<double> values{1.0};
  for (int k = 0; k < copies; ++k) {
    std::vector<double> next;
    next.reserve(values.size() * 2);
    for (double v : values) {
      next.push_back(v * a);
      next.push_back(v * (1.0 - a));
    }
    values = std::move(next);
  }
  return sort_descending(std::move(values));
}

}  // namespace

TEST_SUITE_BEGIN("bounds");

TEST_CASE("theorem 1 bound and binding branch") {
  const BoundReport ab = theorem1_bound(QubitSpectrum(0.6), QubitSpectrum(0.7));
  CHECK(ab.bound_alpha == 0.7);
  CHECK(ab.binding_branch == BindingBranch::auxiliary_dominates);
  CHECK(ab.tight);

  const BoundReport ba = theorem1_bound(QubitSpectrum(0.7), QubitSpectrum(0.6));
  CHECK(ba.bound_alpha == 0.7);
  CHECK(ba.binding_branch == BindingBranch::target_dominates);

  const BoundReport mixed = theorem1_bound(QubitSpectrum(0.5), QubitSpectrum(0.5));
  CHECK(mixed.bound_alpha == 0.5);
  CHECK(mixed.binding_branch == BindingBranch::target_dominates);
}

TEST_CASE("theorem 1 is exact for the sort channel") {
  std::mt19937_64 eng(17);
  std::uniform_real_distribution<double> unif(0.5, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double alpha = unif(eng);
    const double beta = unif(eng);
    const double alpha_out =
        optimal_purify(QubitSpectrum(alpha), Spectrum({beta, 1.0 - beta})).alpha_out;
    CHECK(std::abs(alpha_out - std::max(alpha, beta)) <= 1e-12);
  }
}

TEST_CASE("theorem 2 bound on the worked example") {
  const Spectrum aux({0.5, 0.3, 0.2});

  const BoundReport loose = theorem2_bound(QubitSpectrum(0.6), aux);
  CHECK(loose.bound_alpha == doctest::Approx(5.0 / 7.0).epsilon(1e-15));
  CHECK_FALSE(loose.tight);
  CHECK(loose.binding_branch == BindingBranch::auxiliary_dominates);
  const double alpha_out = optimal_purify(QubitSpectrum(0.6), aux).alpha_out;
  CHECK(alpha_out == doctest::Approx(0.68).epsilon(1e-14));
  CHECK(alpha_out < loose.bound_alpha);

  const BoundReport tight = theorem2_bound(QubitSpectrum(0.75), aux);
  CHECK(tight.bound_alpha == 0.75);
  CHECK(tight.tight);
  CHECK(tight.binding_branch == BindingBranch::target_dominates);
  CHECK(optimal_purify(QubitSpectrum(0.75), aux).alpha_out == 0.75);

  const BoundReport mixed =
      theorem2_bound(QubitSpectrum(0.5), Spectrum({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  CHECK(mixed.bound_alpha == 0.5);
}

TEST_CASE("theorem 2 with a pure auxiliary direction") {
  const BoundReport report = theorem2_bound(QubitSpectrum(0.8), Spectrum({0.7, 0.3, 0.0}));
  CHECK(report.bound_alpha == 1.0);
  CHECK_FALSE(report.bound_polarization.is_finite());
}

TEST_CASE("theorem 2 soundness and tightness dichotomy") {
  std::mt19937_64 eng(18);
  std::uniform_real_distribution<double> unif(0.5, 1.0);
  for (int d = 2; d <= 6; ++d) {
    for (int trial = 0; trial < 1000; ++trial) {
      const QubitSpectrum target(unif(eng));
      const Spectrum aux = random_sorted_spectrum(d, eng);
      const BoundReport report = theorem2_bound(target, aux);
      const double alpha_out = optimal_purify(target, aux).alpha_out;

      CHECK(alpha_out <= report.bound_alpha + 1e-12);
      if (report.tight) {
        CHECK(std::abs(alpha_out - report.bound_alpha) <= 1e-12);
      } else {
        CHECK(alpha_out < report.bound_alpha);
      }
    }
  }
}

TEST_CASE("bound_alpha and bound_polarization agree through the qubit map") {
  std::mt19937_64 eng(19);
  std::uniform_real_distribution<double> unif(0.5, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 2 + trial % 5;
    const QubitSpectrum target(unif(eng));
    // Keep the smallest eigenvalue off the floor so the naive alpha ->
    // eps map retains precision for the comparison.
    Spectrum aux = random_sorted_spectrum(d, eng);
    if (aux.smallest() < 1e-3) continue;

    const BoundReport report = theorem2_bound(target, aux);
    const double mapped =
        0.5 * std::log(report.bound_alpha / (1.0 - report.bound_alpha));
    CHECK(std::abs(mapped - report.bound_polarization.value()) <= 1e-12);

    // The polarization form of the bound: max of the two sides.
    const double eps_t = polarization_of_qubit(target).value();
    const double eps_a = generalized_polarization(aux).value();
    CHECK(std::abs(report.bound_polarization.value() - std::max(eps_t, eps_a)) <= 1e-12);
  }
}

TEST_CASE("proof-chain products: beta_j * beta_d <= beta_1 * beta_{d-j+1}") {
  std::mt19937_64 eng(20);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 2 + trial % 6;
    const Spectrum aux = random_sorted_spectrum(d, eng);
    for (int j = 1; j <= d; ++j) {
      CHECK(aux[j - 1] * aux[d - 1] <= aux[0] * aux[d - j] + 1e-15);
    }
  }
}

TEST_CASE("distillation bounds are (j-1) eps") {
  const std::vector<Polarization> bounds = distillation_bounds(3, Polarization(0.2));
  REQUIRE(bounds.size() == 2);
  CHECK(bounds[0].value() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(bounds[1].value() == doctest::Approx(0.4).epsilon(1e-15));

  const std::vector<Polarization> trivial = distillation_bounds(2, Polarization(0.0));
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[0].value() == 0.0);

  CHECK_THROWS_AS(distillation_bounds(1, Polarization(0.2)), std::invalid_argument);
}

TEST_CASE("theorem 2 on tensor-power auxiliaries reproduces (j-1) eps") {
  const double eps = 0.2;
  const QubitSpectrum q = qubit_from_polarization(Polarization(eps));
  for (int j = 2; j <= 5; ++j) {
    const Spectrum aux = qubit_tensor_power(q.alpha(), j - 1);
    // beta_1/beta_d = (a/(1-a))^(j-1), so the auxiliary polarization is
    // (j-1) eps and it dominates the eps target.
    const BoundReport report = theorem2_bound(q, aux);
    CHECK(std::abs(report.bound_polarization.value() - (j - 1) * eps) <= 1e-12);
  }
}

TEST_CASE("check_no_go is inclusive at the bound") {
  const BoundReport report = theorem2_bound(QubitSpectrum(0.6), Spectrum({0.5, 0.3, 0.2}));
  CHECK(check_no_go(0.68, report));
  CHECK(check_no_go(report.bound_alpha, report));
  CHECK_FALSE(check_no_go(report.bound_alpha + 2e-9, report));
}

TEST_SUITE_END();

#include "purelab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace purelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_probabilities(const std::vector<double>& values) {
  if (values.empty()) {
    throw std::invalid_argument("spectrum must have at least one entry");
  }
  double sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("spectrum entry is negative or NaN: " +
                                  std::to_string(v));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTol) {
    throw std::invalid_argument("spectrum entries sum to " +
                                std::to_string(sum) + ", expected 1");
  }
}

void renormalize(std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  if (sum != 1.0) {
    for (double& v : values) v /= sum;
  }
}

}  // namespace

Polarization::Polarization(double epsilon) : epsilon_(epsilon) {
  if (std::isnan(epsilon) || epsilon < 0.0) {
    throw std::domain_error("polarization must be non-negative, got " +
                            std::to_string(epsilon));
  }
}

Polarization Polarization::infinite() { return Polarization(kInf); }

bool Polarization::is_finite() const { return std::isfinite(epsilon_); }

QubitSpectrum::QubitSpectrum(double alpha) : alpha_(alpha), complement_(0.0) {
  if (std::isnan(alpha) || alpha < 0.5 - kProbabilitySumTol ||
      alpha > 1.0 + kProbabilitySumTol) {
    throw std::invalid_argument(
        "qubit spectrum alpha must lie in [1/2, 1], got " + std::to_string(alpha));
  }
  alpha_ = std::clamp(alpha, 0.5, 1.0);
  complement_ = 1.0 - alpha_;  // exact for alpha in [1/2, 1]
}

QubitSpectrum QubitSpectrum::from_parts(double alpha, double complement) {
  if (std::isnan(alpha) || std::isnan(complement) || complement < 0.0 ||
      alpha < complement || std::abs(alpha + complement - 1.0) > kProbabilitySumTol) {
    throw std::invalid_argument("qubit spectrum parts must be {alpha, 1-alpha}");
  }
  return QubitSpectrum(alpha, complement);
}

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  validate_probabilities(values_);
  if (!std::is_sorted(values_.begin(), values_.end(), std::greater<double>())) {
    throw std::invalid_argument("spectrum values must be non-increasing");
  }
  renormalize(values_);
}

JointSpectrum::JointSpectrum(QubitSpectrum target, const Spectrum& aux)
    : block_dim_(aux.dim()), alpha_(target.alpha()) {
  values_.reserve(2 * block_dim_);
  for (double beta : aux.values()) values_.push_back(target.alpha() * beta);
  for (double beta : aux.values()) values_.push_back(target.complement() * beta);
}

QubitSpectrum qubit_from_polarization(Polarization eps) {
  if (!eps.is_finite()) {
    throw std::domain_error("qubit_from_polarization requires finite polarization");
  }
  // e^eps/(e^eps + e^-eps) and its complement, each as a logistic so both
  // tails keep full relative precision.
  const double alpha = 1.0 / (1.0 + std::exp(-2.0 * eps.value()));
  const double complement = 1.0 / (1.0 + std::exp(2.0 * eps.value()));
  return QubitSpectrum::from_parts(alpha, complement);
}

Polarization polarization_of_qubit(QubitSpectrum q) {
  if (q.complement() == 0.0) return Polarization::infinite();
  return Polarization(std::max(0.0, 0.5 * std::log(q.alpha() / q.complement())));
}

Polarization generalized_polarization(const Spectrum& s) {
  if (s.smallest() == 0.0) return Polarization::infinite();
  return Polarization(std::max(0.0, 0.5 * std::log(s.largest() / s.smallest())));
}

JointSpectrum joint_spectrum(QubitSpectrum target, const Spectrum& aux) {
  return JointSpectrum(target, aux);
}

Spectrum sort_descending(std::vector<double> values) {
  validate_probabilities(values);
  std::stable_sort(values.begin(), values.end(), std::greater<double>());
  return Spectrum(std::move(values));
}

}  // namespace purelab

#pragma once

#include <cstddef>
#include <vector>

namespace purelab {

// Absolute tolerance for probability sums; spectra whose entries sum to 1
// within this are renormalized on construction, anything worse is rejected.
inline constexpr double kProbabilitySumTol = 1e-12;

/// Polarization eps = (1/2) ln(lmax/lmin) of a state's spectrum.
/// 0 for a maximally mixed state; +infinity is the pure-state sentinel
/// (lmin == 0) and compares greater than every finite value.
class Polarization {
public:
  explicit Polarization(double epsilon);
  static Polarization infinite();

  double value() const { return epsilon_; }
  bool is_finite() const;

  friend auto operator<=>(Polarization a, Polarization b) = default;

private:
  double epsilon_;
};

/// Sorted qubit spectrum {alpha, 1-alpha}, represented by the larger
/// eigenvalue alpha in [1/2, 1]. The complement is carried explicitly so
/// that near-pure states keep full relative precision (alpha alone loses
/// the spectrum once 1-alpha drops below machine epsilon).
class QubitSpectrum {
public:
  explicit QubitSpectrum(double alpha);
  static QubitSpectrum from_parts(double alpha, double complement);

  double alpha() const { return alpha_; }
  double complement() const { return complement_; }

  friend bool operator==(QubitSpectrum a, QubitSpectrum b) = default;

private:
  QubitSpectrum(double alpha, double complement)
      : alpha_(alpha), complement_(complement) {}

  double alpha_;
  double complement_;
};

/// Eigenvalues of a density operator, sorted non-increasing, summing to 1.
class Spectrum {
public:
  /// Values must already be non-increasing; use sort_descending otherwise.
  explicit Spectrum(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t dim() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double largest() const { return values_.front(); }
  double smallest() const { return values_.back(); }

private:
  std::vector<double> values_;
};

/// Unsorted joint spectrum of a qubit target and a d-level auxiliary:
/// block 1 holds alpha*beta_i, block 2 holds (1-alpha)*beta_i, each block
/// internally non-increasing.
class JointSpectrum {
public:
  JointSpectrum(QubitSpectrum target, const Spectrum& aux);

  const std::vector<double>& values() const { return values_; }
  std::size_t block_dim() const { return block_dim_; }
  double alpha() const { return alpha_; }

private:
  std::vector<double> values_;
  std::size_t block_dim_;
  double alpha_;
};

/// alpha = e^eps / (e^eps + e^-eps). Throws std::domain_error for negative
/// or non-finite polarization.
QubitSpectrum qubit_from_polarization(Polarization eps);

/// eps = (1/2) ln(alpha / (1-alpha)); a vanishing complement yields the
/// +inf sentinel.
Polarization polarization_of_qubit(QubitSpectrum q);

/// Generalized polarization eps = (1/2) ln(values[0] / values[d-1]);
/// +inf sentinel when the smallest eigenvalue is 0.
Polarization generalized_polarization(const Spectrum& s);

JointSpectrum joint_spectrum(QubitSpectrum target, const Spectrum& aux);

/// Validates and stably sorts a probability vector into a Spectrum.
Spectrum sort_descending(std::vector<double> values);

}  // namespace purelab

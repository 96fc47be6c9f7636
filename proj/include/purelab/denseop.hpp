#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "purelab/spectra.hpp"

namespace purelab {

// Max-entry tolerances for operator validation.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kWeightTol = 1e-9;

/// Deterministic random stream: a seeded mt19937_64 with hand-rolled
/// uniform and Box-Muller normal variates, so identical seeds produce
/// identical samples on every platform.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Stream derived from (master seed, indices); independent draws for
  /// parallel harnesses without sharing state.
  static RngStream derive(std::uint64_t master_seed, std::uint64_t a,
                          std::uint64_t b = 0);

  double uniform();                      // [0, 1)
  double normal();                       // N(0, 1)
  std::complex<double> complex_normal(); // re, im each N(0, 1)

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Dense Hermitian, PSD, trace-one operator. Construction symmetrizes
/// (rho + rho^dag)/2 and validates all three invariants.
class DensityOperator {
public:
  explicit DensityOperator(Eigen::MatrixXcd entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  static DensityOperator diagonal(const std::vector<double>& probabilities);
  static DensityOperator maximally_mixed(Eigen::Index dim);

private:
  Eigen::MatrixXcd entries_;
};

/// Dense unitary; construction checks U U^dag = I in max-entry norm.
class UnitaryOperator {
public:
  explicit UnitaryOperator(Eigen::MatrixXcd entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  static UnitaryOperator identity(Eigen::Index dim);
  /// Permutation unitary with perm[i] naming the source basis index of
  /// output basis state i.
  static UnitaryOperator permutation(const std::vector<std::size_t>& perm);

private:
  Eigen::MatrixXcd entries_;
};

/// Column weights w_z = sum over the first d rows of |u_{i,z}|^2; each lies
/// in [0, 1] and they total d.
class WeightVector {
public:
  explicit WeightVector(std::vector<double> weights);

  const std::vector<double>& weights() const { return weights_; }
  std::size_t block_dim() const { return weights_.size() / 2; }

private:
  std::vector<double> weights_;
};

/// Kronecker product with the target factor leftmost.
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Partial trace over the auxiliary (rightmost) factor.
DensityOperator partial_trace_aux(const DensityOperator& rho, Eigen::Index dim_t,
                                  Eigen::Index dim_a);

/// The purification channel Tr_A(U rho U^dag) reduced to the target.
DensityOperator apply_purification(const DensityOperator& rho_joint,
                                   const UnitaryOperator& u, Eigen::Index dim_t,
                                   Eigen::Index dim_a);

/// Hilbert-Schmidt sample: G a d x d matrix of complex standard Gaussians,
/// rho = G G^dag / tr(G G^dag).
DensityOperator random_density(Eigen::Index d, RngStream& rng);

/// Haar sample: QR of a Ginibre matrix with the R diagonal's phases folded
/// into Q to make the factor unique.
UnitaryOperator random_unitary(Eigen::Index dim, RngStream& rng);

/// Weights of the purification lemma; requires a qubit target (dim_t == 2)
/// and u.dim == 2*dim_a.
WeightVector permutation_weights(const UnitaryOperator& u, Eigen::Index dim_t,
                                 Eigen::Index dim_a);

/// Real eigenvalues, clamped into [0, 1], sorted non-increasing, and
/// renormalized to a Spectrum.
Spectrum eigenvalues_sorted(const DensityOperator& rho);

}  // namespace purelab

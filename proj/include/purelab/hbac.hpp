#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "purelab/spectra.hpp"

namespace purelab {

/// Diagonal joint spectrum of n qubits, basis-ordered with Q_n leftmost
/// (most significant bit) and Q_1, the reset qubit, rightmost. Sort and
/// reset both preserve diagonality, so the full state is this vector.
class HbacState {
public:
  HbacState(int n, std::vector<double> diag, Polarization eps0,
            std::uint64_t iterations = 0);

  /// The product state rho_eps0 tensored n times.
  static HbacState product(int n, Polarization eps0);

  int n() const { return n_; }
  const std::vector<double>& diag() const { return diag_; }
  Polarization eps0() const { return eps0_; }
  std::uint64_t iterations() const { return iterations_; }

private:
  int n_;
  std::vector<double> diag_;
  Polarization eps0_;
  std::uint64_t iterations_;
};

/// Half the L1 distance between two diagonal states of equal size.
double trace_distance(const HbacState& a, const HbacState& b);

/// Rethermalizes Q_1: replaces its reduced state with the diagonal qubit
/// state of polarization eps0, leaving the other qubits' joint marginal
/// untouched.
HbacState reset_q1(const HbacState& s);

/// Sorts the joint diagonal non-increasing: the optimal n-qubit
/// permutation (the compression step of the partner pairing algorithm).
HbacState sort_step(const HbacState& s);

/// Polarization of the reduced state of Q_j, 1 <= j <= n.
Polarization target_polarization(const HbacState& s, int j);

struct HbacIterationRecord {
  std::uint64_t iteration = 0;
  double eps_n = 0.0;
  double successive_distance = 0.0;
};

struct RecursiveOptions {
  std::uint64_t max_iterations = 1'000'000;
  int max_qubits = 12;
};

/// Raised when the outer loop hits the iteration cap; carries the eps_n
/// trajectory observed so far.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& message,
                   std::vector<HbacIterationRecord> trajectory)
      : std::runtime_error(message), trajectory_(std::move(trajectory)) {}

  const std::vector<HbacIterationRecord>& trajectory() const {
    return trajectory_;
  }

private:
  std::vector<HbacIterationRecord> trajectory_;
};

/// Open-system recursive purification. Base case n = 2 returns
/// rho_eps0 x rho_eps0; otherwise alternates sorting with recombining the
/// target marginal of Q_n against a freshly re-purified (n-1)-qubit
/// auxiliary, until successive outer-loop states are delta-close in trace
/// distance. eps_n never exceeds hbac_limit(n, eps0) and is non-decreasing
/// across iterations. If trace is non-null it receives one record per
/// outer iteration of the top level.
HbacState recursive_purify(int n, Polarization eps0, double delta,
                           const RecursiveOptions& options = {},
                           std::vector<HbacIterationRecord>* trace = nullptr);

/// The open-system cooling limit 2^(n-2) * eps0 for qubit Q_n.
Polarization hbac_limit(int n, Polarization eps0);

}  // namespace purelab

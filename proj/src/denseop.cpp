#include "purelab/denseop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace purelab {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().maxCoeff();
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue decomposition failed");
  }
  return solver.eigenvalues();
}

}  // namespace

RngStream RngStream::derive(std::uint64_t master_seed, std::uint64_t a,
                            std::uint64_t b) {
  std::uint64_t state = master_seed;
  splitmix64(state);
  state ^= 0xA0761D6478BD642Full * (a + 1);
  splitmix64(state);
  state ^= 0xE7037ED1A0B428DBull * (b + 1);
  return RngStream(splitmix64(state));
}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller on (0,1] x [0,1) uniforms.
  const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::complex<double> RngStream::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

DensityOperator::DensityOperator(Eigen::MatrixXcd entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw std::invalid_argument("density operator must be square");
  }
  const double herm_defect = max_abs(entries_ - entries_.adjoint());
  if (herm_defect > kHermitianTol) {
    throw std::invalid_argument("density operator is not Hermitian (defect " +
                                std::to_string(herm_defect) + ")");
  }
  entries_ = 0.5 * (entries_ + entries_.adjoint().eval());
  const double trace_defect = std::abs(entries_.trace() - std::complex<double>(1.0));
  if (trace_defect > kTraceTol) {
    throw std::invalid_argument("density operator trace deviates from 1 by " +
                                std::to_string(trace_defect));
  }
  const double min_eig = hermitian_eigenvalues(entries_).minCoeff();
  if (min_eig < -kPsdTol) {
    throw std::invalid_argument("density operator is not PSD (min eigenvalue " +
                                std::to_string(min_eig) + ")");
  }
}

DensityOperator DensityOperator::diagonal(const std::vector<double>& probabilities) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(probabilities.size(), probabilities.size());
  for (std::size_t i = 0; i < probabilities.size(); ++i) m(i, i) = probabilities[i];
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
  return DensityOperator(Eigen::MatrixXcd::Identity(dim, dim) /
                         static_cast<double>(dim));
}

UnitaryOperator::UnitaryOperator(Eigen::MatrixXcd entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw std::invalid_argument("unitary operator must be square");
  }
  const Eigen::MatrixXcd gram = entries_ * entries_.adjoint();
  const double defect =
      max_abs(gram - Eigen::MatrixXcd::Identity(entries_.rows(), entries_.cols()));
  if (defect > kUnitaryTol) {
    throw std::invalid_argument("operator is not unitary (defect " +
                                std::to_string(defect) + ")");
  }
}

UnitaryOperator UnitaryOperator::identity(Eigen::Index dim) {
  return UnitaryOperator(Eigen::MatrixXcd::Identity(dim, dim));
}

UnitaryOperator UnitaryOperator::permutation(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) {
      throw std::invalid_argument("permutation is not a bijection on the indices");
    }
    seen[p] = true;
  }
  // Output state |i> receives input state |perm[i]>.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, perm[i]) = 1.0;
  return UnitaryOperator(std::move(m));
}

WeightVector::WeightVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty() || weights_.size() % 2 != 0) {
    throw std::invalid_argument("weight vector must have 2d entries");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (w < -kWeightTol || w > 1.0 + kWeightTol) {
      throw std::invalid_argument("weight outside [0, 1]: " + std::to_string(w));
    }
    sum += w;
  }
  const double d = static_cast<double>(weights_.size()) / 2.0;
  if (std::abs(sum - d) > kWeightTol) {
    throw std::invalid_argument("weights sum to " + std::to_string(sum) +
                                ", expected " + std::to_string(d));
  }
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  const Eigen::Index da = a.dim(), db = b.dim();
  Eigen::MatrixXcd out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.entries()(i, j) * b.entries();
    }
  }
  return DensityOperator(std::move(out));
}

DensityOperator partial_trace_aux(const DensityOperator& rho, Eigen::Index dim_t,
                                  Eigen::Index dim_a) {
  if (rho.dim() != dim_t * dim_a) {
    throw std::invalid_argument("joint dimension " + std::to_string(rho.dim()) +
                                " does not factor as " + std::to_string(dim_t) +
                                " x " + std::to_string(dim_a));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_t, dim_t);
  for (Eigen::Index s = 0; s < dim_t; ++s) {
    for (Eigen::Index t = 0; t < dim_t; ++t) {
      std::complex<double> sum = 0.0;
      for (Eigen::Index k = 0; k < dim_a; ++k) {
        sum += rho.entries()(s * dim_a + k, t * dim_a + k);
      }
      out(s, t) = sum;
    }
  }
  return DensityOperator(std::move(out));
}

DensityOperator apply_purification(const DensityOperator& rho_joint,
                                   const UnitaryOperator& u, Eigen::Index dim_t,
                                   Eigen::Index dim_a) {
  if (u.dim() != rho_joint.dim() || rho_joint.dim() != dim_t * dim_a) {
    throw std::invalid_argument("purification dimensions do not match");
  }
  const Eigen::MatrixXcd evolved =
      u.entries() * rho_joint.entries() * u.entries().adjoint();
  return partial_trace_aux(DensityOperator(evolved), dim_t, dim_a);
}

DensityOperator random_density(Eigen::Index d, RngStream& rng) {
  if (d < 2) {
    throw std::invalid_argument("random density needs dimension >= 2");
  }
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  }
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(std::move(rho));
}

UnitaryOperator random_unitary(Eigen::Index dim, RngStream& rng) {
  if (dim < 1) {
    throw std::invalid_argument("random unitary needs dimension >= 1");
  }
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const std::complex<double> rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return UnitaryOperator(std::move(q));
}

WeightVector permutation_weights(const UnitaryOperator& u, Eigen::Index dim_t,
                                 Eigen::Index dim_a) {
  if (dim_t != 2) {
    throw std::invalid_argument("permutation weights require a qubit target");
  }
  if (u.dim() != 2 * dim_a) {
    throw std::invalid_argument("unitary dimension does not match 2 x dim_a");
  }
  std::vector<double> weights(2 * dim_a, 0.0);
  for (Eigen::Index z = 0; z < 2 * dim_a; ++z) {
    double w = 0.0;
    for (Eigen::Index i = 0; i < dim_a; ++i) w += std::norm(u.entries()(i, z));
    weights[z] = w;
  }
  return WeightVector(std::move(weights));
}

Spectrum eigenvalues_sorted(const DensityOperator& rho) {
  Eigen::VectorXd eigs = hermitian_eigenvalues(rho.entries());
  std::vector<double> values(eigs.data(), eigs.data() + eigs.size());
  for (double& v : values) {
    if (v < -1e-8) {
      throw std::invalid_argument("operator has eigenvalue " + std::to_string(v) +
                                  " below the PSD slack");
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  std::stable_sort(values.begin(), values.end(), std::greater<double>());
  double sum = 0.0;
  for (double v : values) sum += v;
  for (double& v : values) v /= sum;
  return Spectrum(std::move(values));
}

}  // namespace purelab

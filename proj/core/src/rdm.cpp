// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "nrep/rdm.hpp"

#include "nrep/errors.hpp"
#include "nrep/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nrep {

namespace {

constexpr double kMatrixTolerance = 1e-10;
constexpr double kPairTolerance = 1e-8;
constexpr double kDegeneracyTolerance = 1e-9;

}  // namespace

OneRDM::OneRDM(int n_particles, Eigen::MatrixXcd matrix) : n_(n_particles), rho_(std::move(matrix)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1 || rho_.rows() > kMaxRank) {
    throw ArgumentError("density matrix must be square with rank 1..14");
  }
  if (n_ < 0 || n_ > rho_.rows()) throw ArgumentError("particle count out of range for density matrix");
  const double asymmetry = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (asymmetry > kMatrixTolerance) {
    throw ArgumentError("density matrix is not Hermitian (" + std::to_string(asymmetry) + ")");
  }
  const double trace = rho_.trace().real();
  if (std::abs(trace - n_) > kMatrixTolerance) {
    throw ArgumentError("density matrix trace " + std::to_string(trace) + " differs from N = " +
                        std::to_string(n_));
  }
}

Spectrum::Spectrum(int n_particles, std::vector<double> values) : n_(n_particles), values_(std::move(values)) {
  if (values_.empty() || static_cast<int>(values_.size()) > kMaxRank) {
    throw ArgumentError("spectrum length must be 1..14");
  }
  if (n_ < 0 || n_ > rank()) throw ArgumentError("particle count out of range for spectrum");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw ArgumentError("spectrum entries must be finite");
    if (values_[i] < -kTolerance || values_[i] > 1.0 + kTolerance) {
      throw ArgumentError("occupation lambda_" + std::to_string(i + 1) + " = " + std::to_string(values_[i]) +
                          " outside [0, 1]");
    }
    if (i > 0 && values_[i] > values_[i - 1]) {
      throw ArgumentError("spectrum must be sorted in decreasing order");
    }
  }
  const double total = std::accumulate(values_.begin(), values_.end(), 0.0);
  if (std::abs(total - n_) > kTolerance) {
    throw ArgumentError("spectrum sums to " + std::to_string(total) + ", expected N = " + std::to_string(n_));
  }
}

OneRDM compute_rdm(const FermionState& state) {
  if (!state.is_normalized()) throw PreconditionError("compute_rdm requires a normalized state");
  const int r = state.rank();
  const int n = state.n_particles();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(r, r);
  if (n == 0) return OneRDM(0, std::move(rho));
  // rho_ij = <a_i Psi | a_j Psi>
  std::vector<FermionState> lowered;
  lowered.reserve(static_cast<std::size_t>(r));
  for (int i = 1; i <= r; ++i) lowered.push_back(apply_annihilator(i, state));
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) {
      const Complex value = inner_product(lowered[static_cast<std::size_t>(i)], lowered[static_cast<std::size_t>(j)]);
      rho(i, j) = value;
      rho(j, i) = std::conj(value);
    }
  }
  return OneRDM(n, std::move(rho));
}

NaturalFrame natural_occupations(const OneRDM& rho) {
  const HermitianEigen eig = jacobi_eigensolve(rho.matrix());
  std::vector<double> values = eig.values;
  // Clamp eigensolver noise so the spectrum invariants hold exactly at the edges.
  for (double& v : values) v = std::clamp(v, 0.0, 1.0);
  const Eigen::MatrixXcd diag = eig.vectors.adjoint() * rho.matrix() * eig.vectors;
  double residual = 0.0;
  for (Eigen::Index j = 0; j < diag.cols(); ++j) {
    for (Eigen::Index i = 0; i < diag.rows(); ++i) {
      if (i != j) residual = std::max(residual, std::abs(diag(i, j)));
    }
  }
  return NaturalFrame{OrbitalUnitary(eig.vectors), Spectrum(rho.n_particles(), std::move(values)), residual};
}

FermionState to_natural_basis(const FermionState& state) {
  const NaturalFrame frame = natural_occupations(compute_rdm(state));
  // nu_k = sum_i conj(V_ik) e_i, so e_i = sum_k V_ik nu_k: substitute with V^T.
  return change_basis(state, OrbitalUnitary(frame.orbitals.matrix().transpose()));
}

Spectrum hole_dual_spectrum(const Spectrum& spectrum) {
  const auto& values = spectrum.values();
  std::vector<double> dual(values.size());
  std::transform(values.rbegin(), values.rend(), dual.begin(), [](double v) { return 1.0 - v; });
  return Spectrum(spectrum.rank() - spectrum.n_particles(), std::move(dual));
}

LowdinPairing lowdin_pairs(const FermionState& state) {
  if (state.n_particles() != 2) throw ArgumentError("lowdin_pairs requires a two-electron state");
  if (!state.is_normalized()) throw PreconditionError("lowdin_pairs requires a normalized state");
  const Spectrum spectrum = natural_occupations(compute_rdm(state)).spectrum;
  const int r = spectrum.rank();
  LowdinPairing pairing;
  int k = 1;
  for (; k + 1 <= r; k += 2) {
    const double a = spectrum[k];
    const double b = spectrum[k + 1];
    if (std::abs(a - b) > kPairTolerance) {
      std::ostringstream msg;
      msg << "natural occupations " << k << " and " << k + 1 << " differ by " << std::abs(a - b);
      throw PreconditionError(msg.str());
    }
    const double weight = 0.5 * (a + b);
    if (weight <= kPairTolerance) break;
    pairing.pairs.push_back({k, k + 1, weight});
    if (k + 2 <= r && weight - spectrum[k + 2] <= kDegeneracyTolerance && spectrum[k + 2] > kPairTolerance) {
      pairing.warning = "pairs sharing occupation " + std::to_string(weight) +
                        " are degenerate; orbital pairing chosen by eigenvector order";
    }
  }
  for (int i = k; i <= r; ++i) {
    if (spectrum[i] > kPairTolerance) {
      throw PreconditionError("unpaired natural orbital " + std::to_string(i) + " has nonzero occupation");
    }
    pairing.empty_orbitals.push_back(i);
  }
  return pairing;
}

}  // namespace nrep

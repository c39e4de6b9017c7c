// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rdm.hpp
 * @brief One-particle reduced density matrices and natural occupation numbers.
 */

#pragma once

#include "nrep/fock.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nrep {

/// rho_ij = <Psi| a_i^dagger a_j |Psi>, r x r, Hermitian, trace N.
class OneRDM {
 public:
  /// Validates shape, hermiticity (1e-10) and trace (1e-10).
  OneRDM(int n_particles, Eigen::MatrixXcd matrix);

  [[nodiscard]] int n_particles() const noexcept { return n_; }
  [[nodiscard]] int rank() const noexcept { return static_cast<int>(rho_.rows()); }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }
  /// rho(i, j) with 1-based orbital indices.
  [[nodiscard]] Complex operator()(int i, int j) const { return rho_(i - 1, j - 1); }

 private:
  int n_;
  Eigen::MatrixXcd rho_;
};

/// Natural occupation numbers lambda_1 >= ... >= lambda_r with sum N.
class Spectrum {
 public:
  static constexpr double kTolerance = 1e-8;

  /// Throws ArgumentError unless sorted decreasing, summing to N and inside [0, 1] (1e-8).
  Spectrum(int n_particles, std::vector<double> values);

  [[nodiscard]] int n_particles() const noexcept { return n_; }
  [[nodiscard]] int rank() const noexcept { return static_cast<int>(values_.size()); }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  /// lambda_i, 1-based.
  [[nodiscard]] double operator[](int i) const { return values_.at(static_cast<std::size_t>(i - 1)); }

 private:
  int n_;
  std::vector<double> values_;
};

struct NaturalFrame {
  OrbitalUnitary orbitals;  ///< column k: eigenvector V_k of rho; natural orbital k is sum_i conj(V_ik) e_i
  Spectrum spectrum;
  double residual = 0.0;    ///< max |offdiag(U^dagger rho U)|
};

struct LowdinPair {
  int first = 0;   ///< natural orbital index (1-based)
  int second = 0;
  double weight = 0.0;  ///< |a_k|^2, the common occupation of both orbitals
};

struct LowdinPairing {
  std::vector<LowdinPair> pairs;       ///< nonzero-weight pairs, decreasing weight
  std::vector<int> empty_orbitals;     ///< natural orbitals with occupation ~0
  std::optional<std::string> warning;  ///< set when distinct pairs share an occupation
};

/// Exact one-particle density matrix of a normalized state, via a_i / a_j^dagger.
OneRDM compute_rdm(const FermionState& state);

/// Jacobi eigendecomposition, eigenvalues decreasing, deterministic tie-breaking.
NaturalFrame natural_occupations(const OneRDM& rho);

/// The state re-expanded in its own natural orbitals (diagonal RDM, decreasing diagonal).
FermionState to_natural_basis(const FermionState& state);

/// (1 - lambda_r, ..., 1 - lambda_1) for r - N holes.
Spectrum hole_dual_spectrum(const Spectrum& spectrum);

/// Pair structure of a two-electron state: Psi = sum_k a_k psi_k^(1) ^ psi_k^(2).
LowdinPairing lowdin_pairs(const FermionState& state);

}  // namespace nrep

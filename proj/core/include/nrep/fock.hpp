// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Exact second-quantized states on the wedge space of N fermions in r orbitals.
 *
 * Orbitals are 1-based. A Slater determinant [i1,...,iN] (i1 < ... < iN) stands for
 * psi_i1 ^ ... ^ psi_iN. Creation/annihilation carry the occupation-position sign
 * (-1)^(p-1), where p is the 1-based position of the orbital in the ascending tuple
 * (after insertion for a_i^dagger, before removal for a_i).
 */

#pragma once

#include <Eigen/Core>

#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

namespace nrep {

using Complex = std::complex<double>;

inline constexpr int kMaxRank = 14;

/// Amplitudes with modulus below this are dropped after arithmetic.
inline constexpr double kPruneThreshold = 1e-15;

/// Tolerance used by operations that require a normalized input.
inline constexpr double kNormTolerance = 1e-10;

/**
 * Occupation pattern of a single Slater determinant.
 *
 * Bit (i-1) of the mask marks orbital i. Ordering is lexicographic on the ascending
 * orbital tuples for determinants of equal size, shorter tuples first otherwise.
 */
class SlaterDet {
 public:
  constexpr SlaterDet() = default;

  /// Validates ascending order, distinctness and 1 <= orbital <= rank.
  static SlaterDet from_orbitals(std::span<const int> orbitals, int rank);
  static SlaterDet from_orbitals(std::initializer_list<int> orbitals, int rank);
  static constexpr SlaterDet from_mask(std::uint32_t mask) { return SlaterDet(mask); }

  [[nodiscard]] constexpr std::uint32_t mask() const noexcept { return mask_; }
  [[nodiscard]] int size() const noexcept;
  [[nodiscard]] bool contains(int orbital) const noexcept;
  [[nodiscard]] std::vector<int> orbitals() const;
  /// Largest occupied orbital, 0 for the vacuum.
  [[nodiscard]] int max_orbital() const noexcept;
  /// Number of occupied orbitals strictly below `orbital`.
  [[nodiscard]] int count_below(int orbital) const noexcept;

  friend constexpr bool operator==(SlaterDet, SlaterDet) = default;
  friend std::strong_ordering operator<=>(SlaterDet a, SlaterDet b) noexcept;

 private:
  constexpr explicit SlaterDet(std::uint32_t mask) : mask_(mask) {}
  std::uint32_t mask_ = 0;
};

/// Sparse amplitude map over determinants of a fixed (N, r).
class FermionState {
 public:
  using AmplitudeMap = std::map<SlaterDet, Complex>;

  FermionState(int n_particles, int rank);

  /// Single determinant with amplitude 1.
  static FermionState determinant(std::initializer_list<int> orbitals, int rank);

  [[nodiscard]] int n_particles() const noexcept { return n_; }
  [[nodiscard]] int rank() const noexcept { return r_; }
  [[nodiscard]] const AmplitudeMap& amplitudes() const noexcept { return amps_; }
  [[nodiscard]] bool empty() const noexcept { return amps_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }

  [[nodiscard]] Complex amplitude(SlaterDet det) const;

  /// Adds `value` to the amplitude of `det`; validates det against (N, r).
  void add(SlaterDet det, Complex value);
  void add(std::initializer_list<int> orbitals, Complex value);

  [[nodiscard]] double norm_squared() const;
  [[nodiscard]] double norm() const;
  [[nodiscard]] bool is_normalized(double tol = kNormTolerance) const;

  /// Returns the state scaled to unit norm. Throws PreconditionError on a zero state.
  [[nodiscard]] FermionState normalized() const;
  [[nodiscard]] FermionState scaled(Complex factor) const;

  FermionState& operator+=(const FermionState& other);
  FermionState& operator-=(const FermionState& other);
  friend FermionState operator+(FermionState a, const FermionState& b) { return a += b; }
  friend FermionState operator-(FermionState a, const FermionState& b) { return a -= b; }
  friend FermionState operator*(Complex factor, const FermionState& s) { return s.scaled(factor); }

 private:
  void prune();
  void check_compatible(const FermionState& other) const;

  int n_;
  int r_;
  AmplitudeMap amps_;
};

/// Orbital basis change U (r x r). Column i holds the new orbital psi_i in the old basis.
class OrbitalUnitary {
 public:
  /// Throws ArgumentError unless U is square and U^dagger U = 1 within `tol`.
  explicit OrbitalUnitary(Eigen::MatrixXcd matrix, double tol = 1e-10);

  static OrbitalUnitary identity(int rank);
  /// Exchanges orbitals a and b (1-based).
  static OrbitalUnitary swap(int rank, int a, int b);
  /// Haar-distributed unitary via QR of a complex Gaussian matrix.
  static OrbitalUnitary random(int rank, std::uint64_t seed);

  [[nodiscard]] int rank() const noexcept { return static_cast<int>(u_.rows()); }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return u_; }
  [[nodiscard]] OrbitalUnitary adjoint() const;

 private:
  Eigen::MatrixXcd u_;
};

/// All C(r, n) determinants in lexicographic order. Requires 1 <= n <= r <= 14.
std::vector<SlaterDet> slater_basis(int n, int r);

/// a_i Psi. Determinants without orbital i drop out.
FermionState apply_annihilator(int orbital, const FermionState& state);

/// a_i^dagger Psi. Determinants already holding orbital i drop out.
FermionState apply_creator(int orbital, const FermionState& state);

/// sum_{i in orbitals} <Psi| a_i^dagger a_i |Psi>. Requires a normalized state.
double number_expectation(const FermionState& state, std::span<const int> orbitals);

/// Re-expresses the state after replacing each orbital psi_i by sum_j U_ji psi_j.
FermionState change_basis(const FermionState& state, const OrbitalUnitary& u);

/// Independent standard complex Gaussian amplitudes over slater_basis(n, r), normalized.
FermionState random_state(int n, int r, std::uint64_t seed);

/// <a|b>, conjugate-linear in `a`. Requires equal (N, r).
Complex inner_product(const FermionState& a, const FermionState& b);

/**
 * Particle-hole image in the (r - N)-particle space: each determinant D maps to its
 * complement with the sign of the permutation (D, complement). The one-particle
 * density matrix of the image is 1 - rho^T.
 */
FermionState particle_hole_dual(const FermionState& state);

/// SplitMix64 step; used to derive per-sample seeds from a campaign seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace nrep

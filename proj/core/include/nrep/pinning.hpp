// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file pinning.hpp
 * @brief Saturated constraints, Slater-determinant selection rules and the structured
 *        states they force.
 *
 * A saturated constraint sum_{i in S} lambda_i = k on natural occupations is equivalent to
 * (sum_{i in S} a_i^dagger a_i) Psi = k Psi, so every determinant in the expansion of Psi
 * meets S in exactly k orbitals.
 */

#pragma once

#include "nrep/constraints.hpp"
#include "nrep/fock.hpp"
#include "nrep/rdm.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace nrep {

inline constexpr double kExperimentalPinningTolerance = 1e-5;
inline constexpr double kSyntheticPinningTolerance = 1e-10;

struct PinnedConstraint {
  std::string label;
  double residual = 0.0;
  Status status = Status::kSaturated;
  Relation relation = Relation::kLessEqual;
  bool base = false;
};

struct PinningReport {
  double tolerance = 0.0;
  std::vector<PinnedConstraint> saturated;  ///< sorted by |residual|

  [[nodiscard]] bool contains(const std::string& label) const;
  /// Saturated rows with relation <= (equalities are always saturated when satisfied).
  [[nodiscard]] std::size_t inequality_count() const;
};

/// |det ∩ orbitals| == count for every admissible determinant.
struct SelectionRule {
  std::vector<int> orbitals;  ///< ascending, 1-based
  int count = 0;

  [[nodiscard]] bool admits(SlaterDet det) const;
  friend bool operator==(const SelectionRule&, const SelectionRule&) = default;
};

struct StructuredAmplitudes {
  double alpha_sq = 0.0;
  double beta_sq = 0.0;
  double gamma_sq = 0.0;
  std::array<double, 3> delta_sq_estimates{};  ///< l2-l3, l4-l5, l6-l7
  double consistency_residual = 0.0;           ///< max pairwise spread of the delta estimates

  [[nodiscard]] double delta_sq_mean() const;
};

/// Amplitudes of the three-qubit image, index 4*b1 + 2*b2 + b3.
struct ThreeQubitState {
  std::array<Complex, 8> amplitudes{};
  double off_cube_weight = 0.0;  ///< squared norm outside the 8-determinant cube

  [[nodiscard]] Complex operator()(int b1, int b2, int b3) const { return amplitudes[4 * b1 + 2 * b2 + b3]; }
};

/// Every constraint with |residual| <= tol, ordered by |residual|.
PinningReport detect(const ConstraintSet& set, std::span<const double> occupations,
                     double tol = kExperimentalPinningTolerance);
PinningReport detect(const ConstraintSet& set, const Spectrum& spectrum,
                     double tol = kExperimentalPinningTolerance);

/**
 * Rule from a constraint read as an equality. Accepts 0/1 coefficients with integer bound
 * k (rule: S, k) and 0/-1 coefficients with bound -k. Anything else throws
 * UnsupportedRuleError.
 */
SelectionRule selection_rule(const AffineConstraint& constraint, int n_particles);

/// Determinants of slater_basis(n, r) admitted by every rule.
std::vector<SlaterDet> filter_basis(int n, int r, std::span<const SelectionRule> rules);

/// || (sum_{i in S} n_i - k) Psi ||, evaluated with creation/annihilation operators.
double verify_pinned_state(const FermionState& state, const SelectionRule& rule);

/**
 * Squared amplitudes of alpha[1,2,3] + beta[1,4,5] + gamma[1,6,7] + delta[2,4,6] from the
 * occupations of its seven orbitals (labelled as in that expansion). Requires the three
 * rank-7 inequalities containing lambda_1 to be saturated within `tol`; throws
 * InconsistencyError when an estimate is negative beyond `tol`.
 */
StructuredAmplitudes reconstruct_structured(std::span<const double> occupations, double tol = kExperimentalPinningTolerance);
StructuredAmplitudes reconstruct_structured(const Spectrum& spectrum, double tol = kExperimentalPinningTolerance);

/// alpha[1,2,3] + beta[1,4,5] + gamma[1,6,7] + delta[2,4,6] in rank 7 (not normalized).
FermionState structured_state(Complex alpha, Complex beta, Complex gamma, Complex delta);

/**
 * Maps a rank-6 three-fermion state supported on determinants with one orbital from each
 * pair (k, 7-k) to three qubits: b_k = 0 for orbital k, 1 for orbital 7-k. Amplitudes pick
 * up the sign of reordering psi_{i1} ^ psi_{i2} ^ psi_{i3} into ascending order. Throws
 * PreconditionError when the weight off the cube exceeds `tol`.
 */
ThreeQubitState bd_three_qubit(const FermionState& state, double tol = 1e-8);

/// One-qubit reduced density matrix (2x2) of qubit k in {1,2,3}.
Eigen::Matrix2cd qubit_marginal(const ThreeQubitState& qubits, int k);

/**
 * Relabels natural orbitals inside blocks of degenerate occupations (within 1e-9) so that
 * the rules hold as well as possible. Returns the relabelled state; the spectrum is
 * unchanged. Blocks are searched exhaustively up to `max_permutations` combinations.
 */
FermionState align_degenerate_orbitals(const FermionState& natural_state, const Spectrum& spectrum,
                                       std::span<const SelectionRule> rules, long max_permutations = 40320);

}  // namespace nrep

// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations used by the tests. Nothing here calls the
// library routines it is meant to check.

#pragma once

#include <nrep/fock.hpp>
#include <nrep/polytope.hpp>
#include <nrep/rational.hpp>

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <vector>

namespace oracle {

using nrep::Complex;

/// Dense Fock-space vector indexed by occupation bitmask (bit i-1 = orbital i).
struct Dense {
  int r = 0;
  std::vector<Complex> v;
};

Dense to_dense(const nrep::FermionState& state);
Dense vacuum(int r);
/// Jordan-Wigner annihilator: sign from the number of occupied orbitals below i.
Dense annihilate(int i, const Dense& x);
Dense create(int i, const Dense& x);
Dense add(const Dense& a, const Dense& b, Complex scale_b);
Complex inner(const Dense& a, const Dense& b);
double distance(const Dense& a, const Dense& b);

/// rho_ij = <Psi| a_i^dagger a_j |Psi> from dense operators.
Eigen::MatrixXcd rdm(const Dense& psi);

/// Orbital replacement psi_i -> sum_j U_ji psi_j realised by products of creators.
Dense change_basis(const nrep::FermionState& state, const Eigen::MatrixXcd& u);

/// Decreasing eigenvalues via Eigen's self-adjoint solver.
std::vector<double> eigenvalues(const Eigen::MatrixXcd& hermitian);

/// Complement map with the sign counted by explicit inversions of (D, complement).
Dense hole_dual(const Dense& psi, int n);

/// 2x2 reduced state of qubit k (1..3) by explicit partial trace over a 2x2x2 tensor.
Eigen::Matrix2cd qubit_reduced(const std::array<Complex, 8>& amplitudes, int k);

/// Binomial coefficient.
long binomial(int n, int k);

/// Grid scan of the d-shell low-spin system projected onto (l1, mu).
/// l1 runs over multiples of 1/200 in [0, 2]; the free variables l2..l4 over multiples
/// of 1/100 with l5 = 3 - l1 - ... - l4. Marks the mu values (1/200 grid in [0, 1])
/// reached by some feasible grid completion. Grid completions are a subset of all
/// completions, so marked points are certainly feasible.
struct GridScan {
  int l1_steps = 0;  ///< l1 = i / 200
  int mu_steps = 0;  ///< mu = j / 200
  std::vector<std::vector<bool>> feasible;  ///< [i][j]
};
GridScan dshell_grid_scan();

/// Exact feasibility of (l1, mu) = (l1_units / 200, mu_units / 200) for the same system:
/// the fibre over the point is a bounded polytope in (l2, l3, l4), nonempty iff one of
/// its vertices is feasible. Vertices are enumerated with integer Cramer solves.
bool dshell_point_feasible(int l1_units, int mu_units);

}  // namespace oracle

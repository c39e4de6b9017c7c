// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <vector>

namespace nrep {

struct JacobiOptions {
  double off_diagonal_threshold = 1e-13;  ///< Frobenius norm of the strict off-diagonal part
  int max_sweeps = 100;
  double degeneracy_tolerance = 1e-9;  ///< eigenvalues this close are ordered by eigenvector
};

struct HermitianEigen {
  std::vector<double> values;  ///< decreasing
  Eigen::MatrixXcd vectors;    ///< column k belongs to values[k]
  int sweeps = 0;
  double off_diagonal_norm = 0.0;
};

/**
 * Cyclic complex Jacobi diagonalization of a Hermitian matrix.
 *
 * Eigenvalues come out decreasing. Each eigenvector is rephased so that its first entry of
 * maximal modulus is real and positive; eigenvectors of degenerate eigenvalues are ordered by
 * descending lexicographic comparison of their (re, im) entries. Throws PreconditionError when
 * the input is not Hermitian within `hermitian_tolerance` or Jacobi fails to converge.
 */
HermitianEigen jacobi_eigensolve(const Eigen::MatrixXcd& matrix, const JacobiOptions& options = {},
                                 double hermitian_tolerance = 1e-10);

}  // namespace nrep

// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "nrep/hermitian_eigen.hpp"

#include "nrep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <string>

namespace nrep {

namespace {

using Complex = std::complex<double>;

double off_diagonal_frobenius(const Eigen::MatrixXcd& a) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) total += std::norm(a(i, j));
    }
  }
  return std::sqrt(total);
}

// Column transform T on (p, q):  new_p = t_pp col_p + t_qp col_q,  new_q = t_pq col_p + t_qq col_q.
struct Rotation {
  Complex pp, pq, qp, qq;
};

void apply_right(Eigen::MatrixXcd& a, Eigen::Index p, Eigen::Index q, const Rotation& t) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const Complex ap = a(i, p);
    const Complex aq = a(i, q);
    a(i, p) = ap * t.pp + aq * t.qp;
    a(i, q) = ap * t.pq + aq * t.qq;
  }
}

void apply_left_adjoint(Eigen::MatrixXcd& a, Eigen::Index p, Eigen::Index q, const Rotation& t) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const Complex ap = a(p, j);
    const Complex aq = a(q, j);
    a(p, j) = std::conj(t.pp) * ap + std::conj(t.qp) * aq;
    a(q, j) = std::conj(t.pq) * ap + std::conj(t.qq) * aq;
  }
}

void rephase(Eigen::MatrixXcd& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    const double largest = vectors.col(k).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      if (std::abs(vectors(i, k)) >= largest - 1e-12) {
        const Complex z = vectors(i, k);
        vectors.col(k) *= std::conj(z) / std::abs(z);
        vectors(i, k) = std::abs(z);
        break;
      }
    }
  }
}

bool lexicographically_greater(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  constexpr double eps = 1e-12;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > eps) return a(i).real() > b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > eps) return a(i).imag() > b(i).imag();
  }
  return false;
}

}  // namespace

HermitianEigen jacobi_eigensolve(const Eigen::MatrixXcd& matrix, const JacobiOptions& options,
                                 double hermitian_tolerance) {
  if (matrix.rows() != matrix.cols()) throw ArgumentError("eigensolver needs a square matrix");
  const Eigen::Index n = matrix.rows();
  const double asymmetry = n == 0 ? 0.0 : (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (asymmetry > hermitian_tolerance) {
    throw PreconditionError("matrix is not Hermitian (max |A - A^dagger| = " + std::to_string(asymmetry) + ")");
  }

  Eigen::MatrixXcd a = 0.5 * (matrix + matrix.adjoint());
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);
  HermitianEigen result;

  double off = off_diagonal_frobenius(a);
  while (off > options.off_diagonal_threshold) {
    if (result.sweeps >= options.max_sweeps) {
      throw PreconditionError("Jacobi eigensolver did not converge in " + std::to_string(options.max_sweeps) +
                              " sweeps");
    }
    ++result.sweeps;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const double magnitude = std::abs(g);
        if (magnitude < 1e-300) continue;
        // Phase e^{i phi} of a_pq is absorbed into column q, then a real rotation zeroes it.
        const Complex phase = g / magnitude;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * magnitude);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex conj_phase = std::conj(phase);
        const Rotation rot{c, s, -s * conj_phase, c * conj_phase};
        apply_right(a, p, q, rot);
        apply_left_adjoint(a, p, q, rot);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        apply_right(v, p, q, rot);
      }
    }
    off = off_diagonal_frobenius(a);
  }
  result.off_diagonal_norm = off;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  rephase(v);
  const double tol = options.degeneracy_tolerance;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() > a(y, y).real(); });
  // Within each cluster of near-equal eigenvalues, order eigenvectors lexicographically.
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin + 1;
    while (end < order.size() && a(order[end - 1], order[end - 1]).real() - a(order[end], order[end]).real() <= tol) {
      ++end;
    }
    for (std::size_t i = begin + 1; i < end; ++i) {
      for (std::size_t j = i; j > begin && lexicographically_greater(v.col(order[j]), v.col(order[j - 1])); --j) {
        std::swap(order[j], order[j - 1]);
      }
    }
    begin = end;
  }

  result.values.resize(static_cast<std::size_t>(n));
  result.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    result.values[static_cast<std::size_t>(k)] = a(k, k).real();
    result.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  // Values stay strictly sorted; inside a degenerate cluster they differ by at most `tol`
  // from the diagonal entry of their reordered eigenvector.
  std::sort(result.values.begin(), result.values.end(), std::greater<>());
  return result;
}

}  // namespace nrep

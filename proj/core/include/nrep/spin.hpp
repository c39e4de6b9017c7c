// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spin.hpp
 * @brief Two-column Young diagrams, spin occupation numbers, magnetic moments and the
 *        cubic crystal-field occupation structure of a d-shell.
 */

#pragma once

#include "nrep/rational.hpp"

#include <span>
#include <vector>

namespace nrep {

/// Column lengths c1 >= c2 >= 0 with c1 + c2 = N; total spin S = (c1 - c2) / 2.
struct YoungDiagramTwoCol {
  int c1 = 0;
  int c2 = 0;

  [[nodiscard]] int n_particles() const noexcept { return c1 + c2; }
  [[nodiscard]] Rational total_spin() const { return Rational(c1 - c2, 2); }
  /// Row lengths, e.g. (3, 1) -> [2, 1, 1].
  [[nodiscard]] std::vector<int> row_shape() const;

  friend bool operator==(const YoungDiagramTwoCol&, const YoungDiagramTwoCol&) = default;
};

/// (N/2 + S, N/2 - S). Throws ArgumentError unless N/2 + S is a non-negative integer and S <= N/2.
YoungDiagramTwoCol diagram_for(int n, const Rational& spin);

/// Spin natural occupations mu_1 >= mu_2 >= ... >= 0, summing to 1.
class SpinSpectrum {
 public:
  explicit SpinSpectrum(std::vector<double> values);
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

/// Weights mu_1 - mu_2 (three electrons, low spin).
RationalVector d3_moment_weights();
/// Weights 3 mu_1 + mu_2 - mu_3 - 3 mu_4 (seven electrons, S = 3/2).
RationalVector d7_moment_weights();

/// Spin magnetic moment in Bohr magnetons (g = 2): weights . mu.
double moment(const SpinSpectrum& spectrum, std::span<const Rational> weights);
Rational moment_exact(std::span<const Rational> spin_occupations, std::span<const Rational> weights);

/// Occupation of each t2g orbital (n_t) and each e_g orbital (n_e), 3 n_t + 2 n_e = 7.
struct CubicSplitting {
  double n_t = 0.0;
  double n_e = 0.0;
};

struct CubicOccupations {
  CubicSplitting splitting;
  std::vector<double> lambda;  ///< (n_t, n_t, n_t, n_e, n_e), sorted decreasing
  bool inverted = false;       ///< n_t < n_e; lambda is then (n_e, n_e, n_t, n_t, n_t)
};

struct CubicOccupationsExact {
  Rational n_t;
  Rational n_e;
  RationalVector lambda;
};

/// Requires 1 <= n_t <= 2.
CubicOccupations cubic_occupations(double n_t);
CubicOccupationsExact cubic_occupations_exact(const Rational& n_t);

/// Spin occupations of the iron d-shell along the pinned edge: (0.69, 0.23, 0.08, 0).
SpinSpectrum iron_spin_occupations();

}  // namespace nrep

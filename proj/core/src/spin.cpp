// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "nrep/spin.hpp"

#include "nrep/datasets.hpp"
#include "nrep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nrep {

std::vector<int> YoungDiagramTwoCol::row_shape() const {
  std::vector<int> rows(static_cast<std::size_t>(c2), 2);
  rows.insert(rows.end(), static_cast<std::size_t>(c1 - c2), 1);
  return rows;
}

YoungDiagramTwoCol diagram_for(int n, const Rational& spin) {
  if (n < 0) throw ArgumentError("particle count must be non-negative");
  if (spin < 0) throw ArgumentError("total spin must be non-negative");
  const Rational half_n(n, 2);
  const Rational c1 = half_n + spin;
  if (!is_integer(c1)) throw ArgumentError("N/2 + S must be an integer (N=" + std::to_string(n) + ", S=" + to_string(spin) + ")");
  if (spin > half_n) throw ArgumentError("spin " + to_string(spin) + " exceeds N/2");
  const int cols1 = static_cast<int>(boost::multiprecision::numerator(c1));
  return {cols1, n - cols1};
}

SpinSpectrum::SpinSpectrum(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ArgumentError("spin spectrum must be non-empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < -1e-12) throw ArgumentError("spin occupations must be >= 0");
    if (i > 0 && values_[i] > values_[i - 1]) throw ArgumentError("spin occupations must be decreasing");
  }
  const double total = std::accumulate(values_.begin(), values_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-10) throw ArgumentError("spin occupations must sum to 1");
}

RationalVector d3_moment_weights() { return {1, -1}; }
RationalVector d7_moment_weights() { return {3, 1, -1, -3}; }

double moment(const SpinSpectrum& spectrum, std::span<const Rational> weights) {
  if (weights.size() != spectrum.size()) {
    throw ArgumentError("moment weights have length " + std::to_string(weights.size()) + ", spectrum has " +
                        std::to_string(spectrum.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) total += to_double(weights[i]) * spectrum.values()[i];
  return total;
}

Rational moment_exact(std::span<const Rational> spin_occupations, std::span<const Rational> weights) {
  if (weights.size() != spin_occupations.size()) throw ArgumentError("moment weights length mismatch");
  Rational total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) total += weights[i] * spin_occupations[i];
  return total;
}

CubicOccupations cubic_occupations(double n_t) {
  if (!(n_t >= 1.0 && n_t <= 2.0)) throw ArgumentError("t2g occupation must lie in [1, 2]");
  CubicOccupations out;
  out.splitting = {n_t, (7.0 - 3.0 * n_t) / 2.0};
  const double n_e = out.splitting.n_e;
  out.inverted = n_t < n_e;
  out.lambda = out.inverted ? std::vector<double>{n_e, n_e, n_t, n_t, n_t} : std::vector<double>{n_t, n_t, n_t, n_e, n_e};
  return out;
}

CubicOccupationsExact cubic_occupations_exact(const Rational& n_t) {
  if (n_t < 1 || n_t > 2) throw ArgumentError("t2g occupation must lie in [1, 2]");
  const Rational n_e = (Rational(7) - 3 * n_t) / 2;
  RationalVector lambda = {n_t, n_t, n_t, n_e, n_e};
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return {n_t, n_e, std::move(lambda)};
}

SpinSpectrum iron_spin_occupations() { return SpinSpectrum(data::iron_spin_values()); }

}  // namespace nrep

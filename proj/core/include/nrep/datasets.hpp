// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nrep/rational.hpp"

#include <array>
#include <vector>

namespace nrep::data {

/// Natural occupations of the first excited (S = 1, S_z = 1) state of beryllium, computed
/// from 10 spin-orbitals of the 1s, 2s, 2p shells. Printed to six decimals.
inline std::vector<double> beryllium_occupations() {
  return {1.000000, 0.999995, 0.999287, 0.999284, 0.000711,
          0.000707, 0.000009, 0.000007, 0.000000, 0.000000};
}
inline constexpr int kBerylliumElectrons = 4;

/// Point of the d^7 spin-orbital polytope: five orbital and four spin occupations.
struct PullbackPoint {
  std::array<Rational, 5> orbital;
  std::array<Rational, 4> spin;
};

/// Pullback of vertex A (spherical density, n_t = n_e = 7/5).
inline PullbackPoint pullback_a() {
  const Rational o(7, 5);
  return {{o, o, o, o, o}, {Rational(3, 5), Rational(1, 5), Rational(1, 5), Rational(0)}};
}

/// Pullback of vertex B (n_t = 3/2, maximal moment 5/2).
inline PullbackPoint pullback_b() {
  return {{Rational(3, 2), Rational(3, 2), Rational(3, 2), Rational(5, 4), Rational(5, 4)},
          {Rational(3, 4), Rational(1, 4), Rational(0), Rational(0)}};
}

/// alpha-Fe: t2g occupation per orbital (from 62.5% of d-electrons in t2g) and the
/// saturation moment in Bohr magnetons.
inline constexpr double kIronNt = 1.458;
inline constexpr double kIronMoment = 2.22;

/// Spin occupations recovered for the iron d-shell.
inline std::vector<double> iron_spin_values() { return {0.69, 0.23, 0.08, 0.0}; }

}  // namespace nrep::data

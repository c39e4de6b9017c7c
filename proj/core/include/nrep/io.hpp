// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief JSON readers and writers for states, spectra, constraint sets and halfspace systems.
 *
 * Readers throw FormatError with the offending field path (and line/column for syntax errors).
 */

#pragma once

#include "nrep/constraints.hpp"
#include "nrep/fock.hpp"
#include "nrep/pinning.hpp"
#include "nrep/polytope.hpp"
#include "nrep/rdm.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace nrep::io {

/// {"n", "r", "amplitudes": [{"orbitals": [...], "re", "im"}]}
FermionState parse_state(std::string_view text);
std::string state_to_json(const FermionState& state);

/// Occupations as read, without the [0, 1] / ordering checks of Spectrum, so that
/// inadmissible data can still be evaluated.
struct SpectrumData {
  int n = 0;
  int r = 0;
  std::vector<double> lambda;
};

/// {"n", "r", "lambda": [...]}; requires lambda to have r finite entries.
SpectrumData parse_spectrum(std::string_view text);
std::string spectrum_to_json(int n, std::span<const double> lambda);
std::string spectrum_to_json(const Spectrum& spectrum);

/// Row-major [[re, im], ...] rows.
std::string rdm_to_json(const OneRDM& rho);

std::string constraint_set_to_json(const ConstraintSet& set);

/// {"variables": [...], "equalities": [{"coefficients": ["p/q"...], "bound": "p/q"}],
///  "inequalities": [...]}. Numbers are accepted in place of rational strings.
HalfspaceSystem parse_halfspace_system(std::string_view text);
std::string halfspace_system_to_json(const HalfspaceSystem& system);

std::string evaluation_to_json(const EvaluationReport& report);

struct RuleOutcome {
  std::string label;
  std::optional<SelectionRule> rule;
  std::string note;                ///< reason when no rule was derived
  double eigen_residual = -1.0;    ///< || (sum n_i - k) Psi ||, negative when not computed
};

std::string pinning_to_json(const PinningReport& report, std::span<const RuleOutcome> rules);
std::string reconstruction_to_json(const StructuredAmplitudes& amplitudes);

}  // namespace nrep::io

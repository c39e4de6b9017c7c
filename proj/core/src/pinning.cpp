// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "nrep/pinning.hpp"

#include "nrep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nrep {

namespace {

constexpr double kDegeneracyTolerance = 1e-9;

int inversion_parity(const std::vector<int>& sequence) {
  int inversions = 0;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    for (std::size_t j = i + 1; j < sequence.size(); ++j) {
      if (sequence[i] > sequence[j]) ++inversions;
    }
  }
  return inversions % 2;
}

// Relabels orbital o as relabel[o - 1] and re-sorts each determinant with its sign.
FermionState relabel_orbitals(const FermionState& state, const std::vector<int>& relabel) {
  FermionState out(state.n_particles(), state.rank());
  for (const auto& [det, amp] : state.amplitudes()) {
    std::vector<int> mapped;
    for (int o : det.orbitals()) mapped.push_back(relabel[static_cast<std::size_t>(o - 1)]);
    const double sign = inversion_parity(mapped) == 0 ? 1.0 : -1.0;
    std::sort(mapped.begin(), mapped.end());
    out.add(SlaterDet::from_orbitals(mapped, state.rank()), sign * amp);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- detection

bool PinningReport::contains(const std::string& label) const {
  return std::any_of(saturated.begin(), saturated.end(), [&](const auto& p) { return p.label == label; });
}

std::size_t PinningReport::inequality_count() const {
  return static_cast<std::size_t>(std::count_if(saturated.begin(), saturated.end(), [](const auto& p) {
    return p.relation == Relation::kLessEqual;
  }));
}

PinningReport detect(const ConstraintSet& set, std::span<const double> occupations, double tol) {
  const EvaluationReport evaluation = evaluate(set, occupations, tol);
  PinningReport report;
  report.tolerance = tol;
  for (std::size_t i = 0; i < evaluation.entries.size(); ++i) {
    const auto& entry = evaluation.entries[i];
    if (std::abs(entry.residual) > tol) continue;
    report.saturated.push_back(
        {entry.label, entry.residual, entry.status, set.constraints()[i].relation, entry.base});
  }
  std::stable_sort(report.saturated.begin(), report.saturated.end(),
                   [](const auto& a, const auto& b) { return std::abs(a.residual) < std::abs(b.residual); });
  return report;
}

PinningReport detect(const ConstraintSet& set, const Spectrum& spectrum, double tol) {
  return detect(set, std::span<const double>(spectrum.values()), tol);
}

// ----------------------------------------------------------- selection rules

bool SelectionRule::admits(SlaterDet det) const {
  int hits = 0;
  for (int o : orbitals) hits += det.contains(o) ? 1 : 0;
  return hits == count;
}

SelectionRule selection_rule(const AffineConstraint& constraint, int n_particles) {
  int sign = 0;
  SelectionRule rule;
  for (std::size_t i = 0; i < constraint.coefficients.size(); ++i) {
    const Rational& c = constraint.coefficients[i];
    if (c == 0) continue;
    const int this_sign = c == 1 ? 1 : (c == -1 ? -1 : 0);
    if (this_sign == 0 || (sign != 0 && this_sign != sign)) {
      throw UnsupportedRuleError("constraint '" + constraint.label + "' does not have uniform 0/1 coefficients");
    }
    sign = this_sign;
    rule.orbitals.push_back(static_cast<int>(i) + 1);
  }
  if (sign == 0) throw UnsupportedRuleError("constraint '" + constraint.label + "' is empty");
  const Rational k = sign > 0 ? constraint.bound : Rational(-constraint.bound);
  if (!is_integer(k)) {
    throw UnsupportedRuleError("constraint '" + constraint.label + "' has a non-integer bound");
  }
  rule.count = static_cast<int>(boost::multiprecision::numerator(k));
  if (rule.count < 0 || rule.count > std::min<int>(static_cast<int>(rule.orbitals.size()), n_particles)) {
    throw UnsupportedRuleError("constraint '" + constraint.label + "' yields an unattainable count " +
                               std::to_string(rule.count));
  }
  return rule;
}

std::vector<SlaterDet> filter_basis(int n, int r, std::span<const SelectionRule> rules) {
  for (const auto& rule : rules) {
    for (int o : rule.orbitals) {
      if (o < 1 || o > r) throw ArgumentError("selection rule orbital " + std::to_string(o) + " out of range");
    }
  }
  std::vector<SlaterDet> out;
  for (SlaterDet det : slater_basis(n, r)) {
    if (std::all_of(rules.begin(), rules.end(), [&](const auto& rule) { return rule.admits(det); })) {
      out.push_back(det);
    }
  }
  return out;
}

double verify_pinned_state(const FermionState& state, const SelectionRule& rule) {
  FermionState shifted = state.scaled(-static_cast<double>(rule.count));
  if (state.n_particles() > 0) {
    for (int o : rule.orbitals) shifted += apply_creator(o, apply_annihilator(o, state));
  }
  return shifted.norm();
}

// ------------------------------------------------------------- reconstruction

double StructuredAmplitudes::delta_sq_mean() const {
  return (delta_sq_estimates[0] + delta_sq_estimates[1] + delta_sq_estimates[2]) / 3.0;
}

StructuredAmplitudes reconstruct_structured(std::span<const double> occupations, double tol) {
  if (occupations.size() != 7) {
    throw ArgumentError("structured reconstruction needs 7 occupations, got " + std::to_string(occupations.size()));
  }
  const auto l = [&](int i) { return occupations[static_cast<std::size_t>(i - 1)]; };
  const std::array<std::pair<const char*, double>, 3> pinned = {{
      {"l1 + l2 + l4 + l7", l(1) + l(2) + l(4) + l(7)},
      {"l1 + l3 + l4 + l6", l(1) + l(3) + l(4) + l(6)},
      {"l1 + l2 + l5 + l6", l(1) + l(2) + l(5) + l(6)},
  }};
  for (const auto& [name, value] : pinned) {
    if (std::abs(value - 2.0) > tol) {
      std::ostringstream msg;
      msg << name << " = " << value << " is not pinned to 2 within " << tol;
      throw PreconditionError(msg.str());
    }
  }
  StructuredAmplitudes out;
  out.alpha_sq = l(3);
  out.beta_sq = l(5);
  out.gamma_sq = l(7);
  out.delta_sq_estimates = {l(2) - l(3), l(4) - l(5), l(6) - l(7)};
  for (double& d : out.delta_sq_estimates) {
    if (d < -tol) {
      std::ostringstream msg;
      msg << "negative |delta|^2 estimate " << d;
      throw InconsistencyError(msg.str());
    }
    d = std::max(d, 0.0);
  }
  const auto [lo, hi] = std::minmax_element(out.delta_sq_estimates.begin(), out.delta_sq_estimates.end());
  out.consistency_residual = *hi - *lo;
  const double total = out.alpha_sq + out.beta_sq + out.gamma_sq + out.delta_sq_mean();
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream msg;
    msg << "reconstructed squared amplitudes sum to " << total;
    throw InconsistencyError(msg.str());
  }
  return out;
}

StructuredAmplitudes reconstruct_structured(const Spectrum& spectrum, double tol) {
  if (spectrum.n_particles() != 3 || spectrum.rank() != 7) {
    throw ArgumentError("structured reconstruction applies to three fermions in rank 7");
  }
  return reconstruct_structured(std::span<const double>(spectrum.values()), tol);
}

FermionState structured_state(Complex alpha, Complex beta, Complex gamma, Complex delta) {
  FermionState state(3, 7);
  state.add({1, 2, 3}, alpha);
  state.add({1, 4, 5}, beta);
  state.add({1, 6, 7}, gamma);
  state.add({2, 4, 6}, delta);
  return state;
}

// ----------------------------------------------------------- three qubits

ThreeQubitState bd_three_qubit(const FermionState& state, double tol) {
  if (state.n_particles() != 3 || state.rank() != 6) {
    throw ArgumentError("three-qubit reduction applies to three fermions in rank 6");
  }
  ThreeQubitState out;
  for (const auto& [det, amp] : state.amplitudes()) {
    std::vector<int> picks;
    int index = 0;
    for (int k = 1; k <= 3; ++k) {
      const bool low = det.contains(k);
      const bool high = det.contains(7 - k);
      if (low == high) {
        picks.clear();
        break;
      }
      picks.push_back(low ? k : 7 - k);
      index = 2 * index + (low ? 0 : 1);
    }
    if (picks.size() != 3) {
      out.off_cube_weight += std::norm(amp);
      continue;
    }
    const double sign = inversion_parity(picks) == 0 ? 1.0 : -1.0;
    out.amplitudes[static_cast<std::size_t>(index)] = sign * amp;
  }
  if (out.off_cube_weight > tol) {
    std::ostringstream msg;
    msg << "state has weight " << out.off_cube_weight << " outside the Borland-Dennis cube";
    throw PreconditionError(msg.str());
  }
  return out;
}

Eigen::Matrix2cd qubit_marginal(const ThreeQubitState& qubits, int k) {
  if (k < 1 || k > 3) throw ArgumentError("qubit index must be 1, 2 or 3");
  const int shift = 3 - k;
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      // Other two qubits must agree.
      if (((x ^ y) & ~(1 << shift)) != 0) continue;
      rho((x >> shift) & 1, (y >> shift) & 1) +=
          qubits.amplitudes[static_cast<std::size_t>(x)] * std::conj(qubits.amplitudes[static_cast<std::size_t>(y)]);
    }
  }
  return rho;
}

// ------------------------------------------------------ degenerate relabelling

FermionState align_degenerate_orbitals(const FermionState& natural_state, const Spectrum& spectrum,
                                       std::span<const SelectionRule> rules, long max_permutations) {
  const int r = natural_state.rank();
  if (spectrum.rank() != r) throw ArgumentError("spectrum rank does not match state rank");
  if (rules.empty()) return natural_state;

  std::vector<std::pair<int, int>> blocks;  // [begin, end) 0-based
  long combinations = 1;
  for (int begin = 0; begin < r;) {
    int end = begin + 1;
    while (end < r && spectrum[end] - spectrum[end + 1] <= kDegeneracyTolerance) ++end;
    if (end - begin > 1) {
      blocks.emplace_back(begin, end);
      for (int f = 2; f <= end - begin; ++f) {
        combinations *= f;
        if (combinations > max_permutations) return natural_state;
      }
    }
    begin = end;
  }
  if (blocks.empty()) return natural_state;

  const auto score = [&](const FermionState& s) {
    double total = 0.0;
    for (const auto& rule : rules) total += verify_pinned_state(s, rule);
    return total;
  };

  std::vector<int> relabel(static_cast<std::size_t>(r));
  std::iota(relabel.begin(), relabel.end(), 1);
  FermionState best = natural_state;
  double best_score = score(natural_state);

  // Odometer over the per-block permutations; identity comes first.
  while (best_score > 1e-12) {
    std::size_t b = 0;
    for (; b < blocks.size(); ++b) {
      auto first = relabel.begin() + blocks[b].first;
      auto last = relabel.begin() + blocks[b].second;
      if (std::next_permutation(first, last)) break;
    }
    if (b == blocks.size()) break;
    const FermionState candidate = relabel_orbitals(natural_state, relabel);
    const double s = score(candidate);
    if (s < best_score - 1e-14) {
      best_score = s;
      best = candidate;
    }
  }
  return best;
}

}  // namespace nrep

// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "oracles.hpp"

#include <nrep/datasets.hpp>
#include <nrep/errors.hpp>
#include <nrep/pinning.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <random>

using namespace nrep;

namespace {

const std::vector<double> kBerylliumReduced{0.999995, 0.999287, 0.999284, 0.000711, 0.000707, 0.000009, 0.000007};

// Counts masks with n bits in r orbitals meeting every (set, count) pair.
long brute_count(int n, int r, const std::vector<std::pair<std::vector<int>, int>>& rules) {
  long total = 0;
  for (std::uint32_t m = 0; m < (1u << r); ++m) {
    if (std::popcount(m) != n) continue;
    bool ok = true;
    for (const auto& [set, k] : rules) {
      int hits = 0;
      for (int o : set) hits += (m >> (o - 1)) & 1u;
      ok = ok && hits == k;
    }
    total += ok ? 1 : 0;
  }
  return total;
}

// || (sum_{i in S} n_i - k) Psi || with dense Jordan-Wigner operators.
double dense_rule_residual(const FermionState& state, const SelectionRule& rule) {
  const auto psi = oracle::to_dense(state);
  auto out = psi;
  for (auto& v : out.v) v *= -static_cast<double>(rule.count);
  for (int i : rule.orbitals) out = oracle::add(out, oracle::create(i, oracle::annihilate(i, psi)), 1.0);
  return std::sqrt(oracle::inner(out, out).real());
}

std::vector<SelectionRule> rules_for(const ConstraintSet& set, std::initializer_list<const char*> labels) {
  std::vector<SelectionRule> out;
  for (const char* label : labels) out.push_back(selection_rule(set.find(label), set.system().n_particles));
  return out;
}

}  // namespace

TEST_CASE("detect on Borland-Dennis occupations") {
  const auto set = catalog(3, 6);
  const auto report = detect(set, std::vector<double>{1, 0.5, 0.5, 0.5, 0.5, 0}, 1e-10);
  CHECK(report.contains("bd(1,6)"));
  CHECK(report.contains("bd-hss"));
  CHECK(report.contains("pauli(1)"));
  CHECK(report.contains("nonneg(6)"));
  CHECK(report.contains("order(2,3)"));
  CHECK_FALSE(report.contains("order(1,2)"));
  CHECK_FALSE(report.contains("nonneg(1)"));
  for (std::size_t i = 1; i < report.saturated.size(); ++i) {
    CHECK(std::abs(report.saturated[i - 1].residual) <= std::abs(report.saturated[i].residual));
  }
  std::size_t inequalities = 0;
  for (const auto& p : report.saturated) inequalities += p.relation == Relation::kLessEqual ? 1 : 0;
  CHECK(report.inequality_count() == inequalities);
}

TEST_CASE("detect on reduced beryllium occupations") {
  const auto set = catalog(3, 7);
  const auto loose = detect(set, kBerylliumReduced, kExperimentalPinningTolerance);
  CHECK(loose.contains("quad(1,2,4,7)"));
  CHECK(loose.contains("quad(1,3,4,6)"));
  CHECK(loose.contains("quad(1,2,5,6)"));
  CHECK_FALSE(loose.contains("quad(2,3,4,5)"));
  const auto tight = detect(set, kBerylliumReduced, 1e-9);
  CHECK(tight.contains("quad(1,2,4,7)"));
  CHECK_FALSE(tight.contains("quad(1,3,4,6)"));
}

TEST_CASE("random spectra pin no generalized inequality") {
  const auto set = catalog(3, 7);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto spectrum = natural_occupations(compute_rdm(random_state(3, 7, mix_seed(5, s)))).spectrum;
    const auto report = detect(set, spectrum, kSyntheticPinningTolerance);
    for (const auto& p : report.saturated) CHECK((p.base || p.relation == Relation::kEqual));
  }
}

TEST_CASE("selection_rule") {
  const auto q = catalog(3, 7);
  CHECK(selection_rule(q.find("quad(1,2,4,7)"), 3) == SelectionRule{{1, 2, 4, 7}, 2});
  CHECK(selection_rule(q.find("pauli(3)"), 3) == SelectionRule{{3}, 1});
  CHECK(selection_rule(q.find("nonneg(7)"), 3) == SelectionRule{{7}, 0});
  CHECK(selection_rule(q.find("trace"), 3) == SelectionRule{{1, 2, 3, 4, 5, 6, 7}, 3});
  CHECK_THROWS_AS(selection_rule(q.find("order(1,2)"), 3), UnsupportedRuleError);

  const auto bd = catalog(3, 6);
  CHECK(selection_rule(bd.find("bd(1,6)"), 3) == SelectionRule{{1, 6}, 1});
  CHECK_THROWS_AS(selection_rule(bd.find("bd-hss"), 3), UnsupportedRuleError);

  const auto dual = catalog(4, 7);
  CHECK(selection_rule(dual.find("dual:quad(1,2,4,7)"), 4) == SelectionRule{{1, 4, 6, 7}, 2});

  CHECK_THROWS_AS(selection_rule(derive_pauli_from_quadruple(), 3), UnsupportedRuleError);
  AffineConstraint half{"half", {1, 1, 0}, Relation::kLessEqual, Rational(1, 2), "test"};
  CHECK_THROWS_AS(selection_rule(half, 1), UnsupportedRuleError);
  AffineConstraint too_many{"big", {1, 1, 0}, Relation::kLessEqual, 3, "test"};
  CHECK_THROWS_AS(selection_rule(too_many, 2), UnsupportedRuleError);

  const SelectionRule rule{{1, 2, 4, 7}, 2};
  CHECK(rule.admits(SlaterDet::from_orbitals({1, 2, 3}, 7)));
  CHECK_FALSE(rule.admits(SlaterDet::from_orbitals({1, 2, 4}, 7)));
  CHECK_FALSE(rule.admits(SlaterDet::from_orbitals({3, 5, 6}, 7)));
}

TEST_CASE("filter_basis") {
  const auto q = catalog(3, 7);
  const auto one = rules_for(q, {"quad(1,2,4,7)"});
  CHECK(filter_basis(3, 7, one).size() == 18);
  CHECK(brute_count(3, 7, {{{1, 2, 4, 7}, 2}}) == 18);

  const auto three = rules_for(q, {"quad(1,2,4,7)", "quad(1,3,4,6)", "quad(1,2,5,6)"});
  const auto dets = filter_basis(3, 7, three);
  REQUIRE(dets.size() == 4);
  CHECK(dets[0] == SlaterDet::from_orbitals({1, 2, 3}, 7));
  CHECK(dets[1] == SlaterDet::from_orbitals({1, 4, 5}, 7));
  CHECK(dets[2] == SlaterDet::from_orbitals({1, 6, 7}, 7));
  CHECK(dets[3] == SlaterDet::from_orbitals({2, 4, 6}, 7));

  const auto two = rules_for(q, {"quad(1,2,4,7)", "quad(1,3,4,6)"});
  CHECK(static_cast<long>(filter_basis(3, 7, two).size()) == brute_count(3, 7, {{{1, 2, 4, 7}, 2}, {{1, 3, 4, 6}, 2}}));

  const auto bd = catalog(3, 6);
  const auto cube = rules_for(bd, {"bd(1,6)", "bd(2,5)", "bd(3,4)"});
  CHECK(filter_basis(3, 6, cube).size() == 8);
  CHECK(filter_basis(3, 6, {}).size() == 20);

  const std::vector<SelectionRule> bad{{{8}, 0}};
  CHECK_THROWS_AS(filter_basis(3, 7, bad), ArgumentError);
}

TEST_CASE("verify_pinned_state") {
  const auto state = structured_state(0.7, Complex(0, 0.5), 0.4, Complex(-0.3, 0.1)).normalized();
  const auto q = catalog(3, 7);
  for (const auto& rule : rules_for(q, {"quad(1,2,4,7)", "quad(1,3,4,6)", "quad(1,2,5,6)"})) {
    CHECK(verify_pinned_state(state, rule) <= 1e-14);
    CHECK(dense_rule_residual(state, rule) <= 1e-14);
  }
  const SelectionRule rule{{1, 2, 4, 7}, 2};
  CHECK(verify_pinned_state(FermionState::determinant({3, 5, 6}, 7), rule) == doctest::Approx(2.0));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto psi = random_state(3, 7, s);
    CHECK(verify_pinned_state(psi, rule) == doctest::Approx(dense_rule_residual(psi, rule)).epsilon(1e-12));
  }
}

TEST_CASE("structured reconstruction round trip") {
  // Sorted when alpha^2 >= beta^2 + delta^2 and beta^2 >= gamma^2 + delta^2.
  const double a2 = 0.6, b2 = 0.25, c2 = 0.1, d2 = 0.05;
  const auto state = structured_state(std::sqrt(a2), Complex(0, std::sqrt(b2)), -std::sqrt(c2), std::sqrt(d2));
  const auto spectrum = natural_occupations(compute_rdm(state)).spectrum;
  const auto rec = reconstruct_structured(spectrum, 1e-10);
  CHECK(rec.alpha_sq == doctest::Approx(a2).epsilon(1e-10));
  CHECK(rec.beta_sq == doctest::Approx(b2).epsilon(1e-10));
  CHECK(rec.gamma_sq == doctest::Approx(c2).epsilon(1e-10));
  CHECK(rec.delta_sq_mean() == doctest::Approx(d2).epsilon(1e-10));
  CHECK(rec.consistency_residual <= 1e-10);

  const auto be = reconstruct_structured(kBerylliumReduced, kExperimentalPinningTolerance);
  CHECK(be.alpha_sq == doctest::Approx(0.999284));
  CHECK(be.beta_sq == doctest::Approx(0.000707));
  CHECK(be.gamma_sq == doctest::Approx(0.000007));
  CHECK(be.delta_sq_estimates[0] == doctest::Approx(3e-6).epsilon(1e-3));
  CHECK(be.delta_sq_estimates[1] == doctest::Approx(4e-6).epsilon(1e-3));
  CHECK(be.delta_sq_estimates[2] == doctest::Approx(2e-6).epsilon(1e-3));
  CHECK(be.consistency_residual == doctest::Approx(2e-6).epsilon(1e-3));

  CHECK_THROWS_AS(reconstruct_structured(std::vector<double>{1, 0.5, 0.5, 0.5, 0.25, 0.25, 0}, 1e-6),
                  PreconditionError);
  CHECK_THROWS_AS(reconstruct_structured(std::vector<double>{1, 0.4, 0.5, 0.5, 0.6, 0, 0.1}, 1e-6),
                  InconsistencyError);
  CHECK_THROWS_AS(reconstruct_structured(std::vector<double>{1, 1, 1}, 1e-6), ArgumentError);
  CHECK_THROWS_AS(reconstruct_structured(Spectrum(3, {1, 1, 1, 0, 0, 0}), 1e-6), ArgumentError);
}

TEST_CASE("Borland-Dennis states as three qubits") {
  const auto set = catalog(3, 6);
  const auto cube = filter_basis(3, 6, rules_for(set, {"bd(1,6)", "bd(2,5)", "bd(3,4)"}));
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    FermionState state(3, 6);
    for (SlaterDet d : cube) state.add(d, Complex(gauss(rng), gauss(rng)));
    state = state.normalized();
    const auto qubits = bd_three_qubit(state);
    CHECK(qubits.off_cube_weight == 0.0);
    for (SlaterDet d : cube) {
      int index = 0;
      for (int k = 1; k <= 3; ++k) index = 2 * index + (d.contains(k) ? 0 : 1);
      CHECK(std::abs(qubits.amplitudes[static_cast<std::size_t>(index)]) ==
            doctest::Approx(std::abs(state.amplitude(d))).epsilon(1e-14));
    }
    // The density matrix is block diagonal over the pairs (k, 7-k) and each block is
    // unitarily equivalent to the marginal of qubit k.
    const auto rho = compute_rdm(state).matrix();
    std::vector<double> from_qubits;
    for (int k = 1; k <= 3; ++k) {
      const Eigen::Matrix2cd marginal = qubit_marginal(qubits, k);
      CHECK((marginal - oracle::qubit_reduced(qubits.amplitudes, k)).cwiseAbs().maxCoeff() <= 1e-14);
      CHECK(std::abs(marginal(0, 0) - rho(k - 1, k - 1)) <= 1e-12);
      CHECK(std::abs(marginal(1, 1) - rho(6 - k, 6 - k)) <= 1e-12);
      CHECK(std::abs(std::abs(marginal(0, 1)) - std::abs(rho(k - 1, 6 - k))) <= 1e-12);
      for (double v : oracle::eigenvalues(marginal)) from_qubits.push_back(v);
    }
    std::sort(from_qubits.begin(), from_qubits.end(), std::greater<>());
    const auto lambda = oracle::eigenvalues(rho);
    for (std::size_t i = 0; i < 6; ++i) CHECK(lambda[i] == doctest::Approx(from_qubits[i]).epsilon(1e-10));
  }
  CHECK_THROWS_AS(bd_three_qubit(FermionState::determinant({1, 2, 6}, 6)), PreconditionError);
  CHECK_THROWS_AS(bd_three_qubit(FermionState::determinant({1, 2, 3}, 7)), ArgumentError);
  CHECK_THROWS_AS(qubit_marginal(ThreeQubitState{}, 4), ArgumentError);
}

TEST_CASE("align_degenerate_orbitals") {
  const auto state = structured_state(0.5, 0.5, 0.5, 0.5);
  const auto natural = to_natural_basis(state);
  const auto spectrum = natural_occupations(compute_rdm(natural)).spectrum;
  CHECK(spectrum.values()[0] == doctest::Approx(0.75));
  const auto set = catalog(3, 7);
  const auto report = detect(set, spectrum, kSyntheticPinningTolerance);
  CHECK(report.contains("quad(1,3,4,6)"));
  CHECK(report.contains("quad(1,2,4,7)"));
  CHECK_FALSE(report.contains("quad(1,2,5,6)"));
  const auto rules = rules_for(set, {"quad(1,3,4,6)", "quad(1,2,4,7)"});
  const auto aligned = align_degenerate_orbitals(natural, spectrum, rules);
  for (const auto& rule : rules) CHECK(verify_pinned_state(aligned, rule) <= 1e-8);
  const auto relabeled = natural_occupations(compute_rdm(aligned)).spectrum.values();
  for (std::size_t i = 0; i < 7; ++i) CHECK(relabeled[i] == doctest::Approx(spectrum.values()[i]).epsilon(1e-10));
  CHECK(aligned.size() == 4);
  CHECK(align_degenerate_orbitals(natural, spectrum, {}).amplitudes() == natural.amplitudes());
}

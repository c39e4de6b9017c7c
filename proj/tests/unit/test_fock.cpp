// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "oracles.hpp"

#include <nrep/errors.hpp>
#include <nrep/fock.hpp>

#include <random>

using namespace nrep;

namespace {

std::vector<int> orbitals_of(SlaterDet d) { return d.orbitals(); }

void check_matches(const FermionState& state, const oracle::Dense& dense, double tol) {
  CHECK(oracle::distance(oracle::to_dense(state), dense) <= tol);
}

}  // namespace

TEST_CASE("slater_basis enumerates C(r, n) determinants in lexicographic order") {
  const auto b13 = slater_basis(1, 3);
  REQUIRE(b13.size() == 3);
  CHECK(orbitals_of(b13[0]) == std::vector<int>{1});
  CHECK(orbitals_of(b13[2]) == std::vector<int>{3});

  const auto b36 = slater_basis(3, 6);
  REQUIRE(b36.size() == 20);
  CHECK(orbitals_of(b36.front()) == std::vector<int>{1, 2, 3});
  CHECK(orbitals_of(b36.back()) == std::vector<int>{4, 5, 6});
  CHECK(slater_basis(3, 7).size() == 35);

  for (int r = 1; r <= 10; ++r) {
    for (int n = 1; n <= r; ++n) {
      const auto basis = slater_basis(n, r);
      CHECK(static_cast<long>(basis.size()) == oracle::binomial(r, n));
      for (std::size_t i = 1; i < basis.size(); ++i) {
        CHECK(std::lexicographical_compare(basis[i - 1].orbitals().begin(), basis[i - 1].orbitals().end(),
                                           basis[i].orbitals().begin(), basis[i].orbitals().end()));
      }
    }
  }
  CHECK_THROWS_AS(slater_basis(4, 3), ArgumentError);
  CHECK_THROWS_AS(slater_basis(3, 15), ArgumentError);
}

TEST_CASE("SlaterDet validates orbitals") {
  CHECK_THROWS_AS(SlaterDet::from_orbitals({2, 1}, 6), ArgumentError);
  CHECK_THROWS_AS(SlaterDet::from_orbitals({1, 1}, 6), ArgumentError);
  CHECK_THROWS_AS(SlaterDet::from_orbitals({1, 7}, 6), ArgumentError);
  CHECK_THROWS_AS(SlaterDet::from_orbitals({0, 2}, 6), ArgumentError);
  const auto d = SlaterDet::from_orbitals({2, 4, 6}, 6);
  CHECK(d.size() == 3);
  CHECK(d.contains(4));
  CHECK_FALSE(d.contains(5));
  CHECK(d.max_orbital() == 6);
  CHECK(d.count_below(5) == 2);
}

TEST_CASE("annihilator and creator signs") {
  const auto a2 = apply_annihilator(2, FermionState::determinant({1, 2, 3}, 6));
  CHECK(a2.amplitude(SlaterDet::from_orbitals({1, 3}, 6)) == Complex(-1));
  const auto a4 = apply_annihilator(4, FermionState::determinant({1, 4, 5}, 6));
  CHECK(a4.amplitude(SlaterDet::from_orbitals({1, 5}, 6)) == Complex(-1));
  CHECK(apply_annihilator(6, FermionState::determinant({1, 2, 3}, 6)).empty());

  const auto c2 = apply_creator(2, FermionState::determinant({1, 3}, 6));
  CHECK(c2.amplitude(SlaterDet::from_orbitals({1, 2, 3}, 6)) == Complex(-1));
  const auto c1 = apply_creator(1, FermionState::determinant({2, 3}, 6));
  CHECK(c1.amplitude(SlaterDet::from_orbitals({1, 2, 3}, 6)) == Complex(1));
  CHECK(apply_creator(1, FermionState::determinant({1, 2}, 6)).empty());
  CHECK_THROWS_AS(apply_annihilator(7, FermionState::determinant({1, 2}, 6)), ArgumentError);
}

TEST_CASE("operators agree with Jordan-Wigner on random states") {
  for (int r = 2; r <= 7; ++r) {
    for (int n = 1; n <= r; ++n) {
      const auto psi = random_state(n, r, mix_seed(11, static_cast<std::uint64_t>(10 * r + n)));
      const auto dense = oracle::to_dense(psi);
      for (int i = 1; i <= r; ++i) {
        check_matches(apply_annihilator(i, psi), oracle::annihilate(i, dense), 1e-14);
        if (n < r) check_matches(apply_creator(i, psi), oracle::create(i, dense), 1e-14);
      }
    }
  }
}

TEST_CASE("canonical anticommutation relations on every basis determinant (r <= 6)") {
  for (int r = 1; r <= 6; ++r) {
    for (int n = 0; n <= r; ++n) {
      const auto basis = n == 0 ? std::vector<SlaterDet>{SlaterDet()} : slater_basis(n, r);
      for (SlaterDet det : basis) {
        FermionState x(n, r);
        x.add(det, 1.0);
        for (int i = 1; i <= r; ++i) {
          for (int j = 1; j <= r; ++j) {
            if (n >= 2) {
              const auto aa = apply_annihilator(i, apply_annihilator(j, x)) + apply_annihilator(j, apply_annihilator(i, x));
              CHECK(aa.norm() == 0.0);
            }
            if (n >= 1 && n < r) {
              auto mixed = apply_annihilator(i, apply_creator(j, x)) + apply_creator(j, apply_annihilator(i, x));
              if (i == j) mixed -= x;
              CHECK(mixed.norm() == 0.0);
            }
            if (n == 0 && r >= 1) {
              auto mixed = apply_annihilator(i, apply_creator(j, x));
              if (i == j) mixed -= x;
              CHECK(mixed.norm() == 0.0);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("creator is the adjoint of the annihilator") {
  const int r = 5;
  for (int i = 1; i <= r; ++i) {
    for (SlaterDet xd : slater_basis(2, r)) {
      for (SlaterDet yd : slater_basis(3, r)) {
        FermionState x(2, r), y(3, r);
        x.add(xd, 1.0);
        y.add(yd, 1.0);
        CHECK(inner_product(apply_creator(i, x), y) == inner_product(x, apply_annihilator(i, y)));
      }
    }
  }
}

TEST_CASE("number_expectation") {
  const std::vector<int> s{1, 2, 4, 7};
  CHECK(number_expectation(FermionState::determinant({1, 2, 3}, 7), s) == doctest::Approx(2.0));
  CHECK(number_expectation(FermionState::determinant({3, 5, 6}, 7), s) == doctest::Approx(0.0));
  FermionState structured(3, 7);
  for (auto d : {std::vector<int>{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}}) {
    structured.add(SlaterDet::from_orbitals(d, 7), 0.5);
  }
  CHECK(number_expectation(structured, s) == doctest::Approx(2.0).epsilon(1e-14));
  const std::vector<int> all{1, 2, 3, 4, 5, 6, 7};
  CHECK(number_expectation(random_state(3, 7, 5), all) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(number_expectation(FermionState::determinant({1, 2, 3}, 7).scaled(2.0), s), PreconditionError);
}

TEST_CASE("change_basis") {
  const auto psi = FermionState::determinant({1, 2, 3}, 6);
  CHECK(oracle::distance(oracle::to_dense(change_basis(psi, OrbitalUnitary::identity(6))), oracle::to_dense(psi)) == 0.0);

  const auto swapped = change_basis(psi, OrbitalUnitary::swap(6, 1, 2));
  CHECK(swapped.amplitude(SlaterDet::from_orbitals({1, 2, 3}, 6)) == Complex(-1));
  CHECK(swapped.norm() == doctest::Approx(1.0));

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int r = 4 + static_cast<int>(seed % 4);
    const int n = 1 + static_cast<int>(seed % 3);
    const auto state = random_state(n, r, seed);
    const auto u = OrbitalUnitary::random(r, seed + 100);
    const auto out = change_basis(state, u);
    CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-10));
    check_matches(out, oracle::change_basis(state, u.matrix()), 1e-10);
    const auto back = change_basis(out, u.adjoint());
    CHECK(oracle::distance(oracle::to_dense(back), oracle::to_dense(state)) <= 1e-10);
    // Inner products preserved.
    const auto other = random_state(n, r, seed + 1000);
    CHECK(std::abs(inner_product(change_basis(other, u), out) - inner_product(other, state)) <= 1e-10);
  }
  CHECK_THROWS_AS(change_basis(psi, OrbitalUnitary::identity(5)), ArgumentError);
}

TEST_CASE("random_state is deterministic and normalized") {
  const auto a = random_state(3, 6, 1);
  const auto b = random_state(3, 6, 1);
  CHECK(oracle::distance(oracle::to_dense(a), oracle::to_dense(b)) == 0.0);
  CHECK(a.size() == 20);
  CHECK(random_state(2, 4, 99).norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(oracle::distance(oracle::to_dense(random_state(3, 6, 2)), oracle::to_dense(a)) > 0.1);
}

TEST_CASE("inner_product") {
  const auto d123 = FermionState::determinant({1, 2, 3}, 6);
  const auto d124 = FermionState::determinant({1, 2, 4}, 6);
  CHECK(inner_product(d123, d123) == Complex(1));
  CHECK(inner_product(d123, d124) == Complex(0));
  CHECK(inner_product(d123.scaled(Complex(0, 1)), d123) == Complex(0, -1));
  FermionState structured(3, 7);
  const std::array<Complex, 4> amps{Complex(0.6, 0), Complex(0, 0.48), Complex(0.36, 0), Complex(0, 0.528)};
  const std::array<std::vector<int>, 4> dets{{{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}}};
  for (std::size_t k = 0; k < 4; ++k) structured.add(SlaterDet::from_orbitals(dets[k], 7), amps[k]);
  CHECK(inner_product(structured, structured).real() == doctest::Approx(structured.norm_squared()).epsilon(1e-14));
  CHECK(inner_product(structured.normalized(), structured.normalized()).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(inner_product(d123, FermionState::determinant({1, 2}, 6)), ArgumentError);
}

TEST_CASE("particle_hole_dual matches the explicit complement map") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto psi = random_state(2, 5, seed);
    const auto dual = particle_hole_dual(psi);
    CHECK(dual.n_particles() == 3);
    check_matches(dual, oracle::hole_dual(oracle::to_dense(psi), 2), 1e-15);
  }
}

TEST_CASE("state arithmetic prunes tiny amplitudes") {
  auto a = FermionState::determinant({1, 2}, 4);
  auto b = a.scaled(1.0 + 1e-16);
  const auto diff = a - b;
  CHECK(diff.empty());
  CHECK_THROWS_AS(FermionState(3, 2), ArgumentError);
  CHECK_THROWS_AS((void)FermionState(2, 4).normalized(), PreconditionError);
}

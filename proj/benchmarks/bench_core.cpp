// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include <nrep/constraints.hpp>
#include <nrep/fock.hpp>
#include <nrep/hermitian_eigen.hpp>
#include <nrep/pinning.hpp>
#include <nrep/polytope.hpp>
#include <nrep/rdm.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_ComputeRdm(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto psi = nrep::random_state(3, r, 1);
  for (auto _ : state) benchmark::DoNotOptimize(nrep::compute_rdm(psi));
}
BENCHMARK(BM_ComputeRdm)->Arg(6)->Arg(7)->Arg(8)->Arg(10);

void BM_JacobiEigensolve(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto rho = nrep::compute_rdm(nrep::random_state(3, r, 2)).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(nrep::jacobi_eigensolve(rho));
}
BENCHMARK(BM_JacobiEigensolve)->Arg(6)->Arg(7)->Arg(10)->Arg(14);

void BM_SpectrumPipeline(benchmark::State& state) {
  std::uint64_t i = 0;
  for (auto _ : state) {
    const auto psi = nrep::random_state(3, 7, nrep::mix_seed(3, i++));
    benchmark::DoNotOptimize(nrep::natural_occupations(nrep::compute_rdm(psi)).spectrum);
  }
}
BENCHMARK(BM_SpectrumPipeline);

void BM_ChangeBasis(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto psi = nrep::random_state(3, r, 4);
  const auto u = nrep::OrbitalUnitary::random(r, 5);
  for (auto _ : state) benchmark::DoNotOptimize(nrep::change_basis(psi, u));
}
BENCHMARK(BM_ChangeBasis)->Arg(6)->Arg(7)->Arg(8);

void BM_EvaluateCatalog(benchmark::State& state) {
  const auto set = nrep::catalog(3, 7);
  const std::vector<double> lambda{0.999995, 0.999287, 0.999284, 0.000711, 0.000707, 0.000009, 0.000007};
  for (auto _ : state) benchmark::DoNotOptimize(nrep::evaluate(set, lambda));
}
BENCHMARK(BM_EvaluateCatalog);

void BM_Catalog(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nrep::catalog(3, r));
}
BENCHMARK(BM_Catalog)->Arg(7)->Arg(12);

void BM_FilterBasis(benchmark::State& state) {
  const std::vector<nrep::SelectionRule> rules{{{1, 2, 4, 7}, 2}, {{1, 3, 4, 6}, 2}, {{1, 2, 5, 6}, 2}};
  for (auto _ : state) benchmark::DoNotOptimize(nrep::filter_basis(3, 7, rules));
}
BENCHMARK(BM_FilterBasis);

void BM_ProjectDShell(benchmark::State& state) {
  const auto system = nrep::dshell_low_spin_system();
  const auto x = system.axis("l1");
  const auto y = system.axis("mu");
  for (auto _ : state) benchmark::DoNotOptimize(nrep::project_2d(system, x, y));
}
BENCHMARK(BM_ProjectDShell);

void BM_ProjectCatalog(benchmark::State& state) {
  const auto system = nrep::to_halfspace_system(nrep::catalog(3, 7));
  const auto x = system.axis("l1");
  const auto y = system.axis("l2");
  for (auto _ : state) benchmark::DoNotOptimize(nrep::project_2d(system, x, y));
}
BENCHMARK(BM_ProjectCatalog);

}  // namespace

BENCHMARK_MAIN();

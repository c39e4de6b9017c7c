// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "nrep/fock.hpp"

#include "nrep/errors.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <bit>
#include <random>
#include <string>

namespace nrep {

namespace {

void check_rank(int rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw ArgumentError("rank " + std::to_string(rank) + " outside 1.." + std::to_string(kMaxRank));
  }
}

void check_orbital(int orbital, int rank) {
  if (orbital < 1 || orbital > rank) {
    throw ArgumentError("orbital " + std::to_string(orbital) + " outside 1.." + std::to_string(rank));
  }
}

std::uint32_t bit(int orbital) { return std::uint32_t{1} << (orbital - 1); }

// Determinant of a small dense complex matrix by LU with partial pivoting.
Complex small_determinant(Eigen::MatrixXcd m) {
  const auto n = m.rows();
  Complex det = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    double best = std::abs(m(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        pivot = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != k) {
      m.row(k).swap(m.row(pivot));
      det = -det;
    }
    det *= m(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Complex factor = m(i, k) / m(k, k);
      m.row(i).tail(n - k - 1) -= factor * m.row(k).tail(n - k - 1);
    }
  }
  return det;
}

}  // namespace

// ---------------------------------------------------------------- SlaterDet

SlaterDet SlaterDet::from_orbitals(std::span<const int> orbitals, int rank) {
  check_rank(rank);
  std::uint32_t mask = 0;
  int previous = 0;
  for (int orbital : orbitals) {
    check_orbital(orbital, rank);
    if (orbital <= previous) {
      throw ArgumentError("determinant orbitals must be strictly increasing");
    }
    mask |= bit(orbital);
    previous = orbital;
  }
  return SlaterDet(mask);
}

SlaterDet SlaterDet::from_orbitals(std::initializer_list<int> orbitals, int rank) {
  return from_orbitals(std::span<const int>(orbitals.begin(), orbitals.size()), rank);
}

int SlaterDet::size() const noexcept { return std::popcount(mask_); }

bool SlaterDet::contains(int orbital) const noexcept {
  return orbital >= 1 && orbital <= 32 && (mask_ & bit(orbital)) != 0;
}

std::vector<int> SlaterDet::orbitals() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

int SlaterDet::max_orbital() const noexcept { return mask_ == 0 ? 0 : 32 - std::countl_zero(mask_); }

int SlaterDet::count_below(int orbital) const noexcept {
  return std::popcount(mask_ & (bit(orbital) - 1));
}

std::strong_ordering operator<=>(SlaterDet a, SlaterDet b) noexcept {
  if (a.size() != b.size()) return a.size() <=> b.size();
  const std::uint32_t diff = a.mask_ ^ b.mask_;
  if (diff == 0) return std::strong_ordering::equal;
  // The tuple holding the smallest differing orbital sorts first.
  const std::uint32_t lowest = diff & (~diff + 1);
  return (a.mask_ & lowest) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

// ------------------------------------------------------------- FermionState

FermionState::FermionState(int n_particles, int rank) : n_(n_particles), r_(rank) {
  check_rank(rank);
  if (n_particles < 0 || n_particles > rank) {
    throw ArgumentError("particle count " + std::to_string(n_particles) + " invalid for rank " +
                        std::to_string(rank));
  }
}

FermionState FermionState::determinant(std::initializer_list<int> orbitals, int rank) {
  FermionState state(static_cast<int>(orbitals.size()), rank);
  state.add(orbitals, 1.0);
  return state;
}

Complex FermionState::amplitude(SlaterDet det) const {
  const auto it = amps_.find(det);
  return it == amps_.end() ? Complex{} : it->second;
}

void FermionState::add(SlaterDet det, Complex value) {
  if (det.size() != n_ || det.max_orbital() > r_) {
    throw ArgumentError("determinant does not belong to the (" + std::to_string(n_) + ", " +
                        std::to_string(r_) + ") space");
  }
  auto [it, inserted] = amps_.try_emplace(det, value);
  if (!inserted) it->second += value;
  if (std::abs(it->second) < kPruneThreshold) amps_.erase(it);
}

void FermionState::add(std::initializer_list<int> orbitals, Complex value) {
  add(SlaterDet::from_orbitals(orbitals, r_), value);
}

double FermionState::norm_squared() const {
  double total = 0.0;
  for (const auto& [det, amp] : amps_) total += std::norm(amp);
  return total;
}

double FermionState::norm() const { return std::sqrt(norm_squared()); }

bool FermionState::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

FermionState FermionState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw PreconditionError("cannot normalize the zero state");
  return scaled(1.0 / n);
}

FermionState FermionState::scaled(Complex factor) const {
  FermionState out(n_, r_);
  for (const auto& [det, amp] : amps_) out.amps_.emplace_hint(out.amps_.end(), det, amp * factor);
  out.prune();
  return out;
}

FermionState& FermionState::operator+=(const FermionState& other) {
  check_compatible(other);
  for (const auto& [det, amp] : other.amps_) add(det, amp);
  return *this;
}

FermionState& FermionState::operator-=(const FermionState& other) {
  check_compatible(other);
  for (const auto& [det, amp] : other.amps_) add(det, -amp);
  return *this;
}

void FermionState::prune() {
  std::erase_if(amps_, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
}

void FermionState::check_compatible(const FermionState& other) const {
  if (other.n_ != n_ || other.r_ != r_) {
    throw ArgumentError("state shapes differ: (" + std::to_string(n_) + ", " + std::to_string(r_) +
                        ") vs (" + std::to_string(other.n_) + ", " + std::to_string(other.r_) + ")");
  }
}

// ----------------------------------------------------------- OrbitalUnitary

OrbitalUnitary::OrbitalUnitary(Eigen::MatrixXcd matrix, double tol) : u_(std::move(matrix)) {
  if (u_.rows() != u_.cols()) throw ArgumentError("orbital unitary must be square");
  check_rank(static_cast<int>(u_.rows()));
  const Eigen::MatrixXcd gram = u_.adjoint() * u_;
  const double defect = (gram - Eigen::MatrixXcd::Identity(u_.rows(), u_.cols())).cwiseAbs().maxCoeff();
  if (defect > tol) {
    throw ArgumentError("matrix is not unitary (max |U^dagger U - 1| = " + std::to_string(defect) + ")");
  }
}

OrbitalUnitary OrbitalUnitary::identity(int rank) {
  check_rank(rank);
  return OrbitalUnitary(Eigen::MatrixXcd::Identity(rank, rank));
}

OrbitalUnitary OrbitalUnitary::swap(int rank, int a, int b) {
  check_rank(rank);
  check_orbital(a, rank);
  check_orbital(b, rank);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(rank, rank);
  m.col(a - 1).swap(m.col(b - 1));
  return OrbitalUnitary(std::move(m));
}

OrbitalUnitary OrbitalUnitary::random(int rank, std::uint64_t seed) {
  check_rank(rank);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(rank, rank);
  for (int j = 0; j < rank; ++j) {
    for (int i = 0; i < rank; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rank, rank);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (int j = 0; j < rank; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return OrbitalUnitary(std::move(q));
}

OrbitalUnitary OrbitalUnitary::adjoint() const { return OrbitalUnitary(u_.adjoint()); }

// ---------------------------------------------------------------- operations

std::vector<SlaterDet> slater_basis(int n, int r) {
  check_rank(r);
  if (n < 1 || n > r) {
    throw ArgumentError("slater_basis requires 1 <= n <= r (got n=" + std::to_string(n) +
                        ", r=" + std::to_string(r) + ")");
  }
  std::vector<SlaterDet> basis;
  // Lexicographic walk over ascending tuples.
  std::vector<int> tuple(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) tuple[static_cast<std::size_t>(k)] = k + 1;
  while (true) {
    basis.push_back(SlaterDet::from_orbitals(tuple, r));
    int k = n - 1;
    while (k >= 0 && tuple[static_cast<std::size_t>(k)] == r - (n - 1 - k)) --k;
    if (k < 0) break;
    ++tuple[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < n; ++j) {
      tuple[static_cast<std::size_t>(j)] = tuple[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return basis;
}

FermionState apply_annihilator(int orbital, const FermionState& state) {
  check_orbital(orbital, state.rank());
  if (state.n_particles() == 0) throw ArgumentError("cannot annihilate in the vacuum sector");
  FermionState out(state.n_particles() - 1, state.rank());
  for (const auto& [det, amp] : state.amplitudes()) {
    if (!det.contains(orbital)) continue;
    const int position = det.count_below(orbital) + 1;
    const double sign = (position - 1) % 2 == 0 ? 1.0 : -1.0;
    out.add(SlaterDet::from_mask(det.mask() & ~bit(orbital)), sign * amp);
  }
  return out;
}

FermionState apply_creator(int orbital, const FermionState& state) {
  check_orbital(orbital, state.rank());
  if (state.n_particles() == state.rank()) throw ArgumentError("cannot create in a full shell");
  FermionState out(state.n_particles() + 1, state.rank());
  for (const auto& [det, amp] : state.amplitudes()) {
    if (det.contains(orbital)) continue;
    const int position = det.count_below(orbital) + 1;
    const double sign = (position - 1) % 2 == 0 ? 1.0 : -1.0;
    out.add(SlaterDet::from_mask(det.mask() | bit(orbital)), sign * amp);
  }
  return out;
}

double number_expectation(const FermionState& state, std::span<const int> orbitals) {
  if (!state.is_normalized()) throw PreconditionError("number_expectation requires a normalized state");
  std::uint32_t selection = 0;
  for (int orbital : orbitals) {
    check_orbital(orbital, state.rank());
    selection |= bit(orbital);
  }
  double total = 0.0;
  for (const auto& [det, amp] : state.amplitudes()) {
    total += std::norm(amp) * std::popcount(det.mask() & selection);
  }
  return total;
}

FermionState change_basis(const FermionState& state, const OrbitalUnitary& u) {
  if (u.rank() != state.rank()) {
    throw ArgumentError("unitary rank " + std::to_string(u.rank()) + " does not match state rank " +
                        std::to_string(state.rank()));
  }
  const int n = state.n_particles();
  FermionState out(n, state.rank());
  if (n == 0) return state;
  const auto& m = u.matrix();
  Eigen::MatrixXcd minor(n, n);
  for (SlaterDet target : slater_basis(n, state.rank())) {
    const auto rows = target.orbitals();
    Complex total = 0.0;
    for (const auto& [det, amp] : state.amplitudes()) {
      const auto cols = det.orbitals();
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) minor(a, b) = m(rows[a] - 1, cols[b] - 1);
      }
      total += amp * small_determinant(minor);
    }
    out.add(target, total);
  }
  return out;
}

FermionState random_state(int n, int r, std::uint64_t seed) {
  const auto basis = slater_basis(n, r);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FermionState state(n, r);
  for (SlaterDet det : basis) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    state.add(det, Complex(re, im));
  }
  return state.normalized();
}

Complex inner_product(const FermionState& a, const FermionState& b) {
  if (a.n_particles() != b.n_particles() || a.rank() != b.rank()) {
    throw ArgumentError("inner_product of states with different (N, r)");
  }
  Complex total = 0.0;
  const auto& small = a.size() <= b.size() ? a.amplitudes() : b.amplitudes();
  const bool a_is_small = a.size() <= b.size();
  for (const auto& [det, amp] : small) {
    const Complex other = a_is_small ? b.amplitude(det) : a.amplitude(det);
    total += a_is_small ? std::conj(amp) * other : std::conj(other) * amp;
  }
  return total;
}

FermionState particle_hole_dual(const FermionState& state) {
  const int r = state.rank();
  const std::uint32_t full = (std::uint32_t{1} << r) - 1;
  FermionState out(r - state.n_particles(), r);
  for (const auto& [det, amp] : state.amplitudes()) {
    // Sign of the shuffle (D, D^c): orbital d at position k jumps d - k complement entries.
    int inversions = 0;
    int k = 1;
    for (int d : det.orbitals()) inversions += d - k++;
    const double sign = inversions % 2 == 0 ? 1.0 : -1.0;
    out.add(SlaterDet::from_mask(full & ~det.mask()), sign * amp);
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace nrep

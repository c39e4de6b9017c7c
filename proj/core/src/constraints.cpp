// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "nrep/constraints.hpp"

#include "nrep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nrep {

namespace {

constexpr const char* kDualPrefix = "dual:";

std::string index_list(std::initializer_list<int> indices) {
  std::string out;
  for (int i : indices) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

std::string index_list(const std::vector<int>& indices) {
  std::string out;
  for (int i : indices) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

AffineConstraint make(std::string label, int r, std::initializer_list<std::pair<int, int>> terms,
                      Relation relation, Rational bound, const char* provenance) {
  AffineConstraint c;
  c.label = std::move(label);
  c.coefficients.assign(static_cast<std::size_t>(r), Rational(0));
  for (auto [index, coefficient] : terms) c.coefficients[static_cast<std::size_t>(index - 1)] += coefficient;
  c.relation = relation;
  c.bound = std::move(bound);
  c.provenance = provenance;
  return c;
}

AffineConstraint index_sum(const std::string& name, int r, const std::vector<int>& indices, Rational bound,
                           const char* provenance) {
  AffineConstraint c;
  c.label = name + "(" + index_list(indices) + ")";
  c.coefficients.assign(static_cast<std::size_t>(r), Rational(0));
  for (int i : indices) c.coefficients[static_cast<std::size_t>(i - 1)] = 1;
  c.relation = Relation::kLessEqual;
  c.bound = std::move(bound);
  c.provenance = provenance;
  return c;
}

void add_base(ConstraintSet& set) {
  const int n = set.system().n_particles;
  const int r = set.system().rank;
  for (int i = 1; i < r; ++i) {
    set.add(make("order(" + index_list({i, i + 1}) + ")", r, {{i, -1}, {i + 1, 1}}, Relation::kLessEqual, 0,
                 family::kOrdering));
  }
  for (int i = 1; i <= r; ++i) {
    set.add(make("nonneg(" + std::to_string(i) + ")", r, {{i, -1}}, Relation::kLessEqual, 0, family::kPauliBound));
    set.add(make("pauli(" + std::to_string(i) + ")", r, {{i, 1}}, Relation::kLessEqual, 1, family::kPauliBound));
  }
  AffineConstraint trace;
  trace.label = "trace";
  trace.coefficients.assign(static_cast<std::size_t>(r), Rational(1));
  trace.relation = Relation::kEqual;
  trace.bound = n;
  trace.provenance = family::kNormalization;
  set.add(std::move(trace));
}

void add_two_electron(ConstraintSet& set) {
  const int r = set.system().rank;
  for (int k = 1; 2 * k <= r; ++k) {
    set.add(make("pair(" + index_list({2 * k - 1, 2 * k}) + ")", r, {{2 * k - 1, 1}, {2 * k, -1}}, Relation::kEqual,
                 0, family::kTwoElectronPairing));
  }
  if (r % 2 == 1) {
    set.add(make("empty(" + std::to_string(r) + ")", r, {{r, 1}}, Relation::kEqual, 0, family::kTwoElectronPairing));
  }
}

void add_borland_dennis(ConstraintSet& set) {
  for (int i = 1; i <= 3; ++i) {
    set.add(make("bd(" + index_list({i, 7 - i}) + ")", 6, {{i, 1}, {7 - i, 1}}, Relation::kEqual, 1,
                 family::kBorlandDennis));
  }
  set.add(make("bd-hss", 6, {{4, 1}, {5, -1}, {6, -1}}, Relation::kLessEqual, 0, family::kBorlandDennis));
}

// lambda_1 + lambda_2 + lambda_4 + lambda_7 + lambda_11 + lambda_16 + ... (gaps 1, 2, 3, ...)
std::vector<int> series_indices(int r) {
  std::vector<int> indices;
  for (int index = 1, gap = 1; index <= r; index += gap, ++gap) indices.push_back(index);
  return indices;
}

std::vector<int> series_tail(int r) {
  std::vector<int> tail;
  for (int index : series_indices(r)) {
    if (index >= 11) tail.push_back(index);
  }
  return tail;
}

void add_rank7_quadruple(ConstraintSet& set, bool with_tails) {
  const int r = set.system().rank;
  const std::vector<std::vector<int>> heads = {{2, 3, 4, 5}, {1, 3, 4, 6}, {1, 2, 5, 6}, {1, 2, 4, 7}};
  const std::vector<int> tail = with_tails ? series_tail(r) : std::vector<int>{};
  for (std::size_t q = 0; q < heads.size(); ++q) {
    std::vector<int> indices = heads[q];
    indices.insert(indices.end(), tail.begin(), tail.end());
    const bool is_series = q + 1 == heads.size();
    const char* provenance = tail.empty() ? family::kRank7Quadruple : family::kInfiniteSeries;
    set.add(index_sum(is_series && !tail.empty() ? "series" : "quad", r, indices, 2, provenance));
  }
}

void add_symmetric_orbital(ConstraintSet& set) {
  const int r = set.system().rank;
  // Odd ranks borrow the pairing of rank r + 1 with lambda_{r+1} = 0; its k = 0 row is lambda_1 <= 1.
  const int even = r % 2 == 0 ? r : r + 1;
  for (int k = (r % 2 == 0 ? 0 : 1); k + 1 < even - k; ++k) {
    set.add(index_sum("sym", r, {k + 1, even - k}, 1, family::kSymmetricOrbital));
  }
}

ConstraintSet three_particle(int r) {
  if (r == 6) {
    ConstraintSet set({3, 6, 0}, Completeness::kComplete);
    add_base(set);
    add_borland_dennis(set);
    return set;
  }
  if (r == 7) {
    ConstraintSet set({3, 7, 0}, Completeness::kComplete);
    add_base(set);
    add_rank7_quadruple(set, false);
    return set;
  }
  ConstraintSet set({3, r, 0}, Completeness::kPossiblyIncomplete);
  add_base(set);
  add_symmetric_orbital(set);
  add_rank7_quadruple(set, true);
  return set;
}

ConstraintSet dual_catalog(const ConstraintSet& particles, int r) {
  ConstraintSet set({r - particles.system().n_particles, r, 0}, particles.completeness());
  add_base(set);
  for (const auto& c : particles.constraints()) {
    if (!c.is_base()) set.add(dualize(c));
  }
  return set;
}

std::string toggle_dual_label(const std::string& label) {
  const std::string prefix = kDualPrefix;
  if (label.rfind(prefix, 0) == 0) return label.substr(prefix.size());
  return prefix + label;
}

}  // namespace

// -------------------------------------------------------------- AffineConstraint

bool AffineConstraint::is_base() const {
  return provenance == family::kOrdering || provenance == family::kPauliBound ||
         provenance == family::kNormalization;
}

std::string AffineConstraint::expression() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const Rational& c = coefficients[i];
    if (c == 0) continue;
    const Rational magnitude = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (magnitude != 1) out << nrep::to_string(magnitude) << ' ';
    out << 'l' << (i + 1);
    first = false;
  }
  if (first) out << '0';
  out << (relation == Relation::kEqual ? " = " : " <= ") << nrep::to_string(bound);
  return out.str();
}

// ----------------------------------------------------------------- ConstraintSet

ConstraintSet::ConstraintSet(SystemDescriptor system, Completeness completeness)
    : system_(system), completeness_(completeness) {
  if (system_.rank < 1 || system_.rank > kMaxRank) throw ArgumentError("constraint set rank outside 1..14");
  if (system_.n_particles < 0 || system_.spin_slots < 0) throw ArgumentError("invalid constraint set descriptor");
}

void ConstraintSet::add(AffineConstraint constraint) {
  const auto width = static_cast<std::size_t>(system_.rank + system_.spin_slots);
  if (constraint.coefficients.size() != width) {
    throw ArgumentError("constraint '" + constraint.label + "' has " + std::to_string(constraint.coefficients.size()) +
                        " coefficients, expected " + std::to_string(width));
  }
  if (std::all_of(constraint.coefficients.begin(), constraint.coefficients.end(),
                  [](const Rational& c) { return c == 0; })) {
    throw ArgumentError("constraint '" + constraint.label + "' has a zero coefficient vector");
  }
  if (contains(constraint.label)) throw ArgumentError("duplicate constraint label '" + constraint.label + "'");
  constraints_.push_back(std::move(constraint));
}

const AffineConstraint& ConstraintSet::find(const std::string& label) const {
  for (const auto& c : constraints_) {
    if (c.label == label) return c;
  }
  throw ArgumentError("no constraint labelled '" + label + "'");
}

bool ConstraintSet::contains(const std::string& label) const {
  return std::any_of(constraints_.begin(), constraints_.end(), [&](const auto& c) { return c.label == label; });
}

// ------------------------------------------------------------------- evaluation

const char* to_string(Status status) {
  switch (status) {
    case Status::kSatisfied: return "satisfied";
    case Status::kSaturated: return "saturated";
    case Status::kViolated: return "violated";
  }
  return "?";
}

const char* to_string(Relation relation) { return relation == Relation::kEqual ? "=" : "<="; }

const char* to_string(Completeness completeness) {
  return completeness == Completeness::kComplete ? "complete" : "valid-but-possibly-incomplete";
}

bool EvaluationReport::admissible() const {
  return std::none_of(entries.begin(), entries.end(), [](const auto& e) { return e.status == Status::kViolated; });
}

const EvaluatedConstraint& EvaluationReport::at(const std::string& label) const {
  for (const auto& e : entries) {
    if (e.label == label) return e;
  }
  throw ArgumentError("no evaluated constraint labelled '" + label + "'");
}

EvaluatedConstraint evaluate(const AffineConstraint& constraint, std::span<const double> occupations, double tol) {
  if (constraint.coefficients.size() != occupations.size()) {
    throw ArgumentError("constraint '" + constraint.label + "' expects " +
                        std::to_string(constraint.coefficients.size()) + " values, got " +
                        std::to_string(occupations.size()));
  }
  if (!(tol >= 0.0)) throw ArgumentError("tolerance must be non-negative");
  EvaluatedConstraint out;
  out.label = constraint.label;
  out.base = constraint.is_base();
  for (std::size_t i = 0; i < occupations.size(); ++i) {
    if (constraint.coefficients[i] != 0) out.value += to_double(constraint.coefficients[i]) * occupations[i];
  }
  out.residual = to_double(constraint.bound) - out.value;
  if (std::abs(out.residual) <= tol) {
    out.status = Status::kSaturated;
  } else if (constraint.relation == Relation::kEqual || out.residual < -tol) {
    out.status = Status::kViolated;
  } else {
    out.status = Status::kSatisfied;
  }
  return out;
}

EvaluationReport evaluate(const ConstraintSet& set, std::span<const double> occupations, double tol) {
  const auto width = static_cast<std::size_t>(set.system().rank + set.system().spin_slots);
  if (occupations.size() != width) {
    throw ArgumentError("constraint set expects " + std::to_string(width) + " values, got " +
                        std::to_string(occupations.size()));
  }
  EvaluationReport report;
  report.tolerance = tol;
  report.entries.reserve(set.size());
  for (const auto& c : set.constraints()) report.entries.push_back(evaluate(c, occupations, tol));
  return report;
}

EvaluationReport evaluate(const ConstraintSet& set, const Spectrum& spectrum, double tol) {
  if (spectrum.n_particles() != set.system().n_particles) {
    throw ArgumentError("spectrum particle count does not match the constraint set");
  }
  return evaluate(set, std::span<const double>(spectrum.values()), tol);
}

// --------------------------------------------------------------------- catalog

ConstraintSet base_constraints(int n, int r) {
  if (r < 1 || r > kMaxRank || n < 1 || n > r) {
    throw ArgumentError("catalog requires 1 <= n <= r <= 14 (got n=" + std::to_string(n) + ", r=" +
                        std::to_string(r) + ")");
  }
  ConstraintSet set({n, r, 0}, Completeness::kPossiblyIncomplete);
  add_base(set);
  return set;
}

ConstraintSet catalog(int n, int r) {
  ConstraintSet base = base_constraints(n, r);
  if (n == 2) {
    ConstraintSet set({2, r, 0}, Completeness::kComplete);
    add_base(set);
    add_two_electron(set);
    return set;
  }
  if (n == 3 && r >= 6) return three_particle(r);
  if (n == r - 2 && r - 2 >= 1) return dual_catalog(catalog(2, r), r);
  if (n == r - 3 && r - 3 >= 3) return dual_catalog(three_particle(r), r);
  return base;
}

AffineConstraint derive_pauli_from_quadruple() {
  const ConstraintSet rank7 = catalog(3, 7);
  const auto& second = rank7.find("quad(1,3,4,6)");
  const auto& third = rank7.find("quad(1,2,5,6)");
  const auto& trace = rank7.find("trace");
  AffineConstraint out;
  out.label = "pauli-from-quad";
  out.relation = Relation::kLessEqual;
  out.provenance = family::kDerived;
  out.coefficients.resize(7);
  for (std::size_t i = 0; i < 7; ++i) {
    out.coefficients[i] = second.coefficients[i] + third.coefficients[i] - trace.coefficients[i];
  }
  out.bound = second.bound + third.bound - trace.bound;
  return out;
}

AffineConstraint canonical(AffineConstraint constraint) {
  if (constraint.relation != Relation::kEqual) return constraint;
  const auto first = std::find_if(constraint.coefficients.begin(), constraint.coefficients.end(),
                                  [](const Rational& c) { return c != 0; });
  if (first != constraint.coefficients.end() && *first < 0) {
    for (auto& c : constraint.coefficients) c = -c;
    constraint.bound = -constraint.bound;
  }
  return constraint;
}

AffineConstraint dualize(const AffineConstraint& constraint) {
  // sum_k c_k (1 - l'_{r+1-k}) <= b   <=>   sum_j (-c_{r+1-j}) l'_j <= b - sum_k c_k
  const std::size_t r = constraint.coefficients.size();
  AffineConstraint out;
  out.label = toggle_dual_label(constraint.label);
  out.relation = constraint.relation;
  out.provenance = constraint.provenance;
  out.coefficients.resize(r);
  Rational total = 0;
  for (std::size_t k = 0; k < r; ++k) {
    total += constraint.coefficients[k];
    out.coefficients[r - 1 - k] = -constraint.coefficients[k];
  }
  out.bound = constraint.bound - total;
  return canonical(std::move(out));
}

ConstraintSet dualize(const ConstraintSet& set, int r) {
  if (set.system().rank != r) {
    throw ArgumentError("dualize: set is for rank " + std::to_string(set.system().rank) + ", not " + std::to_string(r));
  }
  if (set.system().spin_slots != 0) throw ArgumentError("dualize: spin-resolved sets are not supported");
  ConstraintSet out({r - set.system().n_particles, r, 0}, set.completeness());
  for (const auto& c : set.constraints()) out.add(dualize(c));
  return out;
}

}  // namespace nrep

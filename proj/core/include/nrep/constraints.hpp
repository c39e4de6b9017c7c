// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file constraints.hpp
 * @brief Catalog of generalized Pauli constraints on natural occupation numbers.
 *
 * Every constraint is an exact rational functional  c . lambda  (<= | =)  b  over the
 * 1-based occupation indices. Evaluation against floating spectra happens in double
 * precision with an explicit tolerance.
 */

#pragma once

#include "nrep/rational.hpp"
#include "nrep/rdm.hpp"

#include <span>
#include <string>
#include <vector>

namespace nrep {

enum class Relation { kLessEqual, kEqual };

enum class Completeness { kComplete, kPossiblyIncomplete };

/// Constraint family names carried in the provenance field.
namespace family {
inline constexpr const char* kOrdering = "ordering";
inline constexpr const char* kPauliBound = "pauli-bound";
inline constexpr const char* kNormalization = "normalization";
inline constexpr const char* kTwoElectronPairing = "two-electron-pairing";
inline constexpr const char* kBorlandDennis = "borland-dennis";
inline constexpr const char* kRank7Quadruple = "rank7-quadruple";
inline constexpr const char* kSymmetricOrbital = "symmetric-orbital";
inline constexpr const char* kInfiniteSeries = "infinite-series";
inline constexpr const char* kDerived = "derived";
}  // namespace family

struct AffineConstraint {
  std::string label;
  RationalVector coefficients;  ///< one entry per occupation index (plus spin slots)
  Relation relation = Relation::kLessEqual;
  Rational bound;
  std::string provenance;

  /// Ordering, 0 <= lambda <= 1 and trace rows.
  [[nodiscard]] bool is_base() const;
  /// Human-readable form, e.g. "l1 + l2 + l4 + l7 <= 2".
  [[nodiscard]] std::string expression() const;

  friend bool operator==(const AffineConstraint&, const AffineConstraint&) = default;
};

struct SystemDescriptor {
  int n_particles = 0;
  int rank = 0;
  int spin_slots = 0;
  friend bool operator==(const SystemDescriptor&, const SystemDescriptor&) = default;
};

class ConstraintSet {
 public:
  ConstraintSet(SystemDescriptor system, Completeness completeness);

  /// Throws ArgumentError on a duplicate label, zero coefficients or wrong length.
  void add(AffineConstraint constraint);

  [[nodiscard]] const SystemDescriptor& system() const noexcept { return system_; }
  [[nodiscard]] Completeness completeness() const noexcept { return completeness_; }
  [[nodiscard]] const std::vector<AffineConstraint>& constraints() const noexcept { return constraints_; }
  [[nodiscard]] std::size_t size() const noexcept { return constraints_.size(); }
  /// Throws ArgumentError when absent.
  [[nodiscard]] const AffineConstraint& find(const std::string& label) const;
  [[nodiscard]] bool contains(const std::string& label) const;

 private:
  SystemDescriptor system_;
  Completeness completeness_;
  std::vector<AffineConstraint> constraints_;
};

enum class Status { kSatisfied, kSaturated, kViolated };

const char* to_string(Status status);
const char* to_string(Relation relation);
const char* to_string(Completeness completeness);

struct EvaluatedConstraint {
  std::string label;
  double value = 0.0;     ///< c . lambda
  double residual = 0.0;  ///< bound - c . lambda
  Status status = Status::kSatisfied;
  bool base = false;
};

struct EvaluationReport {
  double tolerance = 0.0;
  std::vector<EvaluatedConstraint> entries;

  [[nodiscard]] bool admissible() const;
  [[nodiscard]] const EvaluatedConstraint& at(const std::string& label) const;
};

inline constexpr double kDefaultSaturationTolerance = 1e-6;

/// Base constraints for (n, r) plus every family known for that shape.
ConstraintSet catalog(int n, int r);

/// Ordering, Pauli bounds and trace only.
ConstraintSet base_constraints(int n, int r);

/**
 * Per-constraint residuals. For <=: saturated iff |res| <= tol, violated iff res < -tol.
 * For =: saturated iff |res| <= tol, violated otherwise.
 */
EvaluationReport evaluate(const ConstraintSet& set, std::span<const double> occupations,
                          double tol = kDefaultSaturationTolerance);
EvaluationReport evaluate(const ConstraintSet& set, const Spectrum& spectrum,
                          double tol = kDefaultSaturationTolerance);

/// Classifies a single constraint.
EvaluatedConstraint evaluate(const AffineConstraint& constraint, std::span<const double> occupations,
                             double tol = kDefaultSaturationTolerance);

/// lambda_1 + lambda_6 - lambda_7 <= 1 from the second and third rank-7 inequalities and the trace.
AffineConstraint derive_pauli_from_quadruple();

/// Substitutes lambda_k -> 1 - lambda_{r+1-k}; the result describes (r - n, r).
ConstraintSet dualize(const ConstraintSet& set, int r);
AffineConstraint dualize(const AffineConstraint& constraint);

/// Multiplies an equality by -1 when its first nonzero coefficient is negative.
AffineConstraint canonical(AffineConstraint constraint);

}  // namespace nrep

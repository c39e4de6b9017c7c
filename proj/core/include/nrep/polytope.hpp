// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file polytope.hpp
 * @brief Exact rational halfspace systems and their projections to the plane.
 *
 * Projection substitutes equalities first and then runs Fourier-Motzkin elimination over
 * cpp_rational, pruning parallel rows after every step. Doubles appear only on output.
 */

#pragma once

#include "nrep/constraints.hpp"
#include "nrep/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nrep {

/// coefficients . x  (<= | =)  bound
struct HalfspaceRow {
  RationalVector coefficients;
  Rational bound;
  friend bool operator==(const HalfspaceRow&, const HalfspaceRow&) = default;
};

class HalfspaceSystem {
 public:
  explicit HalfspaceSystem(std::vector<std::string> variables);

  void add_inequality(RationalVector coefficients, Rational bound);  ///< a . x <= b
  void add_equality(RationalVector coefficients, Rational bound);    ///< a . x  = b

  [[nodiscard]] const std::vector<std::string>& variables() const noexcept { return variables_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return variables_.size(); }
  [[nodiscard]] const std::vector<HalfspaceRow>& inequalities() const noexcept { return inequalities_; }
  [[nodiscard]] const std::vector<HalfspaceRow>& equalities() const noexcept { return equalities_; }
  /// Throws ArgumentError for an unknown name.
  [[nodiscard]] std::size_t index_of(const std::string& name) const;
  /// Unit functional selecting one variable.
  [[nodiscard]] RationalVector axis(const std::string& name) const;

  [[nodiscard]] bool contains(const RationalVector& point) const;
  [[nodiscard]] bool contains(const std::vector<double>& point, double tol) const;

 private:
  void check_width(const RationalVector& coefficients) const;

  std::vector<std::string> variables_;
  std::vector<HalfspaceRow> inequalities_;
  std::vector<HalfspaceRow> equalities_;
};

struct Point2 {
  Rational x;
  Rational y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Convex polygon, vertices counterclockwise without collinear triples.
struct Polygon2D {
  std::vector<Point2> vertices;
  bool degenerate = false;  ///< image is a segment or a point

  [[nodiscard]] bool empty() const noexcept { return vertices.empty(); }
  [[nodiscard]] bool contains(const Point2& p) const;
  [[nodiscard]] bool contains(double x, double y, double tol) const;
};

/// Projection result that can lift plane points back to the full variable space.
class Projection2D {
 public:
  /// Throws UnboundedError when the image is unbounded; an infeasible system yields an
  /// empty polygon.
  static Projection2D compute(const HalfspaceSystem& system, const RationalVector& x_axis,
                              const RationalVector& y_axis);

  [[nodiscard]] const Polygon2D& polygon() const noexcept { return polygon_; }
  /// Preimage of a point of the polygon; std::nullopt when the point is outside.
  [[nodiscard]] std::optional<RationalVector> lift(const Point2& point) const;

  struct Substitution {
    std::size_t variable;
    RationalVector expression;  ///< over all columns; value = constant + sum expression_k x_k
    Rational constant;
  };
  struct Elimination {
    std::size_t variable;
    std::vector<HalfspaceRow> rows;  ///< rows that involved `variable` when it was eliminated
  };

 private:
  Projection2D() = default;

  HalfspaceSystem system_{{}};
  std::size_t columns_ = 0;
  std::vector<Substitution> substitutions_;
  std::vector<Elimination> eliminations_;
  Polygon2D polygon_;
};

Polygon2D project_2d(const HalfspaceSystem& system, const RationalVector& x_axis, const RationalVector& y_axis);

/// Variables l1..lr; every catalog row becomes an inequality or equality.
HalfspaceSystem to_halfspace_system(const ConstraintSet& set);

/// Three electrons in a d-shell, spin 1/2 (Young diagram [2,1]); variables l1..l5, mu.
HalfspaceSystem dshell_low_spin_system();

/// mu = slope * n_t + intercept.
struct EdgeLine {
  Rational slope;
  Rational intercept;
  [[nodiscard]] Rational at(const Rational& n_t) const { return slope * n_t + intercept; }
};

/// Pinning edges of seven d-electrons in a cubic field, in the (n_t, mu) plane.
struct DShellEdges {
  EdgeLine edge_ab;  ///< mu = 7 n_t - 8 (segment [A, B])
  EdgeLine edge_b;   ///< mu = 16 - 9 n_t
  Point2 a;          ///< (7/5, 9/5)
  Point2 b;          ///< (3/2, 5/2)
};

/// A and B from the pullback points: n_t is the first orbital entry, mu = 3mu1 + mu2 - mu3 - 3mu4.
DShellEdges dshell_d7_edges();

struct PointClassification {
  double residual_ab = 0.0;  ///< mu - (7 n_t - 8)
  double residual_b = 0.0;   ///< mu - (16 - 9 n_t)
  double distance_ab = 0.0;  ///< Euclidean distance to the line
  double distance_b = 0.0;
  bool below_ab = false;     ///< mu <= 7 n_t - 8 + tol
  bool below_b = false;      ///< mu <= 16 - 9 n_t + tol
  bool pinned_to_ab = false; ///< |residual_ab| <= tol and 7/5 <= n_t <= 3/2
};

PointClassification classify_point(double n_t, double mu, const DShellEdges& edges, double tol);

enum class PolygonFormat { kCsv, kJson };

/// Vertices with 12 significant digits; CSV repeats the first vertex. Throws on empty input.
std::string emit_polygon(const Polygon2D& polygon, PolygonFormat format);

}  // namespace nrep

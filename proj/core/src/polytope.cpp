// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "nrep/polytope.hpp"

#include "nrep/datasets.hpp"
#include "nrep/errors.hpp"
#include "nrep/spin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace nrep {

namespace {

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool is_zero_row(const RationalVector& coefficients) {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const Rational& c) { return c == 0; });
}

// row -= factor * other
void subtract_scaled(HalfspaceRow& row, const Rational& factor, const HalfspaceRow& other) {
  for (std::size_t k = 0; k < row.coefficients.size(); ++k) {
    if (other.coefficients[k] != 0) row.coefficients[k] -= factor * other.coefficients[k];
  }
  row.bound -= factor * other.bound;
}

// Scales each row so its first nonzero coefficient has modulus 1, keeps the tightest of
// parallel rows and drops trivial ones. Returns false when a row reads 0 <= negative.
bool prune(std::vector<HalfspaceRow>& rows) {
  std::map<RationalVector, Rational> tightest;
  std::vector<RationalVector> order;
  for (auto& row : rows) {
    const auto lead = std::find_if(row.coefficients.begin(), row.coefficients.end(),
                                   [](const Rational& c) { return c != 0; });
    if (lead == row.coefficients.end()) {
      if (row.bound < 0) return false;
      continue;
    }
    const Rational scale = *lead < 0 ? Rational(-*lead) : *lead;
    for (auto& c : row.coefficients) c /= scale;
    row.bound /= scale;
    auto [it, inserted] = tightest.try_emplace(row.coefficients, row.bound);
    if (inserted) {
      order.push_back(row.coefficients);
    } else if (row.bound < it->second) {
      it->second = row.bound;
    }
  }
  rows.clear();
  for (auto& key : order) rows.push_back({key, tightest.at(key)});
  return true;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  std::string out = buffer;
  if (out == "-0") out = "0";
  return out;
}

struct PlaneRow {
  Rational a, b, c;  // a x + b y <= c  (or = c)
};

bool satisfies(const std::vector<PlaneRow>& rows, const Point2& p) {
  return std::all_of(rows.begin(), rows.end(), [&](const PlaneRow& r) { return r.a * p.x + r.b * p.y <= r.c; });
}

std::vector<Point2> convex_hull(std::vector<Point2> points) {
  std::sort(points.begin(), points.end(), [](const Point2& p, const Point2& q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() <= 1) return points;
  std::vector<Point2> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Region {a x + b y <= c} intersected with the plane equalities.
Polygon2D plane_polygon(const std::vector<PlaneRow>& inequalities, std::vector<PlaneRow> equalities) {
  Polygon2D polygon;
  // Equalities: reduce to a point or a line.
  for (auto it = equalities.begin(); it != equalities.end();) {
    if (it->a == 0 && it->b == 0) {
      if (it->c != 0) return polygon;
      it = equalities.erase(it);
    } else {
      ++it;
    }
  }
  if (!equalities.empty()) {
    const PlaneRow& e = equalities.front();
    // Point on the line plus direction.
    const Point2 base = e.b != 0 ? Point2{0, e.c / e.b} : Point2{e.c / e.a, 0};
    const Point2 dir{-e.b, e.a};
    std::optional<Rational> lo, hi;
    auto restrict_line = [&](const Rational& slope, const Rational& rhs, bool equality) -> bool {
      // slope * t <= rhs  (or = rhs)
      if (slope == 0) return equality ? rhs == 0 : rhs >= 0;
      const Rational t = rhs / slope;
      if (equality) {
        if ((lo && t < *lo) || (hi && t > *hi)) return false;
        lo = t;
        hi = t;
        return true;
      }
      if (slope > 0) {
        if (!hi || t < *hi) hi = t;
      } else {
        if (!lo || t > *lo) lo = t;
      }
      return true;
    };
    for (std::size_t i = 1; i < equalities.size(); ++i) {
      const auto& q = equalities[i];
      if (!restrict_line(q.a * dir.x + q.b * dir.y, q.c - q.a * base.x - q.b * base.y, true)) return polygon;
    }
    for (const auto& q : inequalities) {
      if (!restrict_line(q.a * dir.x + q.b * dir.y, q.c - q.a * base.x - q.b * base.y, false)) return polygon;
    }
    if (!lo || !hi) throw UnboundedError("projection is an unbounded line");
    if (*lo > *hi) return polygon;
    polygon.degenerate = true;
    polygon.vertices.push_back({base.x + *lo * dir.x, base.y + *lo * dir.y});
    if (*hi != *lo) polygon.vertices.push_back({base.x + *hi * dir.x, base.y + *hi * dir.y});
    return polygon;
  }

  std::vector<Point2> vertices;
  for (std::size_t i = 0; i < inequalities.size(); ++i) {
    for (std::size_t j = i + 1; j < inequalities.size(); ++j) {
      const auto& p = inequalities[i];
      const auto& q = inequalities[j];
      const Rational det = p.a * q.b - p.b * q.a;
      if (det == 0) continue;
      const Point2 v{(p.c * q.b - p.b * q.c) / det, (p.a * q.c - p.c * q.a) / det};
      if (satisfies(inequalities, v)) vertices.push_back(v);
    }
  }
  // Nontrivial recession direction => unbounded whenever the region is nonempty.
  std::vector<Point2> directions;
  for (const auto& q : inequalities) {
    directions.push_back({-q.b, q.a});
    directions.push_back({q.b, -q.a});
  }
  bool recedes = inequalities.empty();
  for (const auto& d : directions) {
    if (std::all_of(inequalities.begin(), inequalities.end(),
                    [&](const PlaneRow& q) { return q.a * d.x + q.b * d.y <= 0; })) {
      recedes = true;
      break;
    }
  }
  if (vertices.empty()) {
    if (!recedes) return polygon;
    // No vertex: either empty or a region containing a whole line (all normals parallel).
    const PlaneRow* reference = inequalities.empty() ? nullptr : &inequalities.front();
    if (reference == nullptr) throw UnboundedError("projection has no bounding constraints");
    std::optional<Rational> lo, hi;
    for (const auto& q : inequalities) {
      // q is parallel to the reference normal: q = s * reference normal.
      const Rational s = reference->a != 0 ? q.a / reference->a : q.b / reference->b;
      const Rational t = q.c / s;
      if (s > 0) {
        if (!hi || t < *hi) hi = t;
      } else {
        if (!lo || t > *lo) lo = t;
      }
    }
    if (lo && hi && *lo > *hi) return polygon;
    throw UnboundedError("projection is unbounded");
  }
  if (recedes) throw UnboundedError("projection is unbounded");
  polygon.vertices = convex_hull(std::move(vertices));
  polygon.degenerate = polygon.vertices.size() < 3;
  return polygon;
}

}  // namespace

// -------------------------------------------------------------- HalfspaceSystem

HalfspaceSystem::HalfspaceSystem(std::vector<std::string> variables) : variables_(std::move(variables)) {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    for (std::size_t j = i + 1; j < variables_.size(); ++j) {
      if (variables_[i] == variables_[j]) throw ArgumentError("duplicate variable name '" + variables_[i] + "'");
    }
  }
}

void HalfspaceSystem::check_width(const RationalVector& coefficients) const {
  if (coefficients.size() != variables_.size()) {
    throw ArgumentError("row has " + std::to_string(coefficients.size()) + " coefficients, system has " +
                        std::to_string(variables_.size()) + " variables");
  }
}

void HalfspaceSystem::add_inequality(RationalVector coefficients, Rational bound) {
  check_width(coefficients);
  inequalities_.push_back({std::move(coefficients), std::move(bound)});
}

void HalfspaceSystem::add_equality(RationalVector coefficients, Rational bound) {
  check_width(coefficients);
  equalities_.push_back({std::move(coefficients), std::move(bound)});
}

std::size_t HalfspaceSystem::index_of(const std::string& name) const {
  const auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) throw ArgumentError("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - variables_.begin());
}

RationalVector HalfspaceSystem::axis(const std::string& name) const {
  RationalVector out(variables_.size(), Rational(0));
  out[index_of(name)] = 1;
  return out;
}

bool HalfspaceSystem::contains(const RationalVector& point) const {
  if (point.size() != variables_.size()) throw ArgumentError("point dimension mismatch");
  const auto value = [&](const HalfspaceRow& row) {
    Rational total = 0;
    for (std::size_t k = 0; k < point.size(); ++k) total += row.coefficients[k] * point[k];
    return total;
  };
  return std::all_of(inequalities_.begin(), inequalities_.end(), [&](const auto& r) { return value(r) <= r.bound; }) &&
         std::all_of(equalities_.begin(), equalities_.end(), [&](const auto& r) { return value(r) == r.bound; });
}

bool HalfspaceSystem::contains(const std::vector<double>& point, double tol) const {
  if (point.size() != variables_.size()) throw ArgumentError("point dimension mismatch");
  const auto value = [&](const HalfspaceRow& row) {
    double total = 0.0;
    for (std::size_t k = 0; k < point.size(); ++k) total += to_double(row.coefficients[k]) * point[k];
    return total - to_double(row.bound);
  };
  return std::all_of(inequalities_.begin(), inequalities_.end(), [&](const auto& r) { return value(r) <= tol; }) &&
         std::all_of(equalities_.begin(), equalities_.end(), [&](const auto& r) { return std::abs(value(r)) <= tol; });
}

// -------------------------------------------------------------------- Polygon2D

bool Polygon2D::contains(const Point2& p) const {
  if (vertices.empty()) return false;
  if (vertices.size() == 1) return vertices.front() == p;
  if (vertices.size() == 2) {
    const auto& a = vertices[0];
    const auto& b = vertices[1];
    return cross(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (cross(vertices[i], vertices[(i + 1) % vertices.size()], p) < 0) return false;
  }
  return true;
}

bool Polygon2D::contains(double x, double y, double tol) const {
  if (vertices.empty()) return false;
  std::vector<std::pair<double, double>> v;
  for (const auto& p : vertices) v.emplace_back(to_double(p.x), to_double(p.y));
  if (v.size() == 1) return std::hypot(x - v[0].first, y - v[0].second) <= tol;
  const auto edge_distance = [&](std::size_t i, std::size_t j) {
    const double ex = v[j].first - v[i].first;
    const double ey = v[j].second - v[i].second;
    const double len = std::hypot(ex, ey);
    return (ex * (y - v[i].second) - ey * (x - v[i].first)) / len;  // signed, left positive
  };
  if (v.size() == 2) {
    const double ex = v[1].first - v[0].first;
    const double ey = v[1].second - v[0].second;
    const double len2 = ex * ex + ey * ey;
    const double t = std::clamp(((x - v[0].first) * ex + (y - v[0].second) * ey) / len2, 0.0, 1.0);
    return std::hypot(x - v[0].first - t * ex, y - v[0].second - t * ey) <= tol;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (edge_distance(i, (i + 1) % v.size()) < -tol) return false;
  }
  return true;
}

// ------------------------------------------------------------------ projection

Projection2D Projection2D::compute(const HalfspaceSystem& system, const RationalVector& x_axis,
                                   const RationalVector& y_axis) {
  const std::size_t d = system.dimension();
  if (x_axis.size() != d || y_axis.size() != d) throw ArgumentError("projection axes must match the system dimension");
  if (is_zero_row(x_axis) || is_zero_row(y_axis)) throw ArgumentError("projection axes must be nonzero");

  Projection2D result;
  result.system_ = system;
  result.columns_ = d + 2;
  const std::size_t X = d;
  const std::size_t Y = d + 1;

  const auto widen = [&](const HalfspaceRow& row) {
    HalfspaceRow out{row.coefficients, row.bound};
    out.coefficients.resize(d + 2, Rational(0));
    return out;
  };
  std::vector<HalfspaceRow> inequalities;
  std::vector<HalfspaceRow> equalities;
  for (const auto& row : system.inequalities()) inequalities.push_back(widen(row));
  for (const auto& row : system.equalities()) equalities.push_back(widen(row));
  for (auto [axis, column] : {std::pair{&x_axis, X}, std::pair{&y_axis, Y}}) {
    HalfspaceRow row{RationalVector(d + 2, Rational(0)), Rational(0)};
    for (std::size_t k = 0; k < d; ++k) row.coefficients[k] = -(*axis)[k];
    row.coefficients[column] = 1;
    equalities.push_back(std::move(row));
  }

  // 1. Substitute equalities, pivoting on original variables.
  std::vector<HalfspaceRow> plane_equalities;
  std::vector<bool> eliminated(d, false);
  for (std::size_t e = 0; e < equalities.size(); ++e) {
    HalfspaceRow pivot_row = equalities[e];
    std::size_t pivot = d;
    for (std::size_t k = 0; k < d; ++k) {
      if (pivot_row.coefficients[k] != 0) {
        pivot = k;
        break;
      }
    }
    if (pivot == d) {
      plane_equalities.push_back(std::move(pivot_row));
      continue;
    }
    const Rational a = pivot_row.coefficients[pivot];
    Substitution sub{pivot, RationalVector(d + 2, Rational(0)), pivot_row.bound / a};
    for (std::size_t k = 0; k < d + 2; ++k) {
      if (k != pivot) sub.expression[k] = -pivot_row.coefficients[k] / a;
    }
    result.substitutions_.push_back(std::move(sub));
    eliminated[pivot] = true;
    const auto substitute = [&](HalfspaceRow& row) {
      if (row.coefficients[pivot] != 0) subtract_scaled(row, row.coefficients[pivot] / a, pivot_row);
    };
    for (std::size_t f = e + 1; f < equalities.size(); ++f) substitute(equalities[f]);
    for (auto& row : inequalities) substitute(row);
    for (auto& row : plane_equalities) substitute(row);
  }
  if (!prune(inequalities)) return result;

  // 2. Fourier-Motzkin on the remaining original variables.
  while (true) {
    std::size_t best = d;
    long best_cost = 0;
    for (std::size_t k = 0; k < d; ++k) {
      if (eliminated[k]) continue;
      long pos = 0;
      long neg = 0;
      for (const auto& row : inequalities) {
        if (row.coefficients[k] > 0) ++pos;
        if (row.coefficients[k] < 0) ++neg;
      }
      const long cost = pos * neg - pos - neg;
      if (best == d || cost < best_cost) {
        best = k;
        best_cost = cost;
      }
    }
    if (best == d) break;
    eliminated[best] = true;
    Elimination step{best, {}};
    std::vector<HalfspaceRow> kept, upper, lower;
    for (auto& row : inequalities) {
      if (row.coefficients[best] > 0) {
        upper.push_back(row);
      } else if (row.coefficients[best] < 0) {
        lower.push_back(row);
      } else {
        kept.push_back(std::move(row));
      }
    }
    step.rows = upper;
    step.rows.insert(step.rows.end(), lower.begin(), lower.end());
    for (const auto& u : upper) {
      for (const auto& l : lower) {
        // u / u_k + l / (-l_k) cancels the variable.
        HalfspaceRow combined{RationalVector(d + 2, Rational(0)), Rational(0)};
        const Rational su = Rational(1) / u.coefficients[best];
        const Rational sl = Rational(-1) / l.coefficients[best];
        for (std::size_t k = 0; k < d + 2; ++k) combined.coefficients[k] = su * u.coefficients[k] + sl * l.coefficients[k];
        combined.coefficients[best] = 0;
        combined.bound = su * u.bound + sl * l.bound;
        kept.push_back(std::move(combined));
      }
    }
    result.eliminations_.push_back(std::move(step));
    inequalities = std::move(kept);
    if (!prune(inequalities)) return result;
  }

  // 3. Plane geometry.
  std::vector<PlaneRow> plane_rows;
  for (const auto& row : inequalities) plane_rows.push_back({row.coefficients[X], row.coefficients[Y], row.bound});
  std::vector<PlaneRow> plane_eqs;
  for (const auto& row : plane_equalities) plane_eqs.push_back({row.coefficients[X], row.coefficients[Y], row.bound});
  result.polygon_ = plane_polygon(plane_rows, std::move(plane_eqs));
  return result;
}

std::optional<RationalVector> Projection2D::lift(const Point2& point) const {
  if (!polygon_.contains(point)) return std::nullopt;
  const std::size_t d = columns_ - 2;
  RationalVector values(columns_, Rational(0));
  values[d] = point.x;
  values[d + 1] = point.y;
  for (auto step = eliminations_.rbegin(); step != eliminations_.rend(); ++step) {
    std::optional<Rational> lo, hi;
    for (const auto& row : step->rows) {
      Rational rest = 0;
      for (std::size_t k = 0; k < columns_; ++k) {
        if (k != step->variable && row.coefficients[k] != 0) rest += row.coefficients[k] * values[k];
      }
      const Rational a = row.coefficients[step->variable];
      const Rational limit = (row.bound - rest) / a;
      if (a > 0) {
        if (!hi || limit < *hi) hi = limit;
      } else {
        if (!lo || limit > *lo) lo = limit;
      }
    }
    if (lo && hi && *lo > *hi) return std::nullopt;
    values[step->variable] = lo && hi ? (*lo + *hi) / 2 : lo ? *lo : hi ? *hi : Rational(0);
  }
  for (auto sub = substitutions_.rbegin(); sub != substitutions_.rend(); ++sub) {
    Rational value = sub->constant;
    for (std::size_t k = 0; k < columns_; ++k) {
      if (sub->expression[k] != 0) value += sub->expression[k] * values[k];
    }
    values[sub->variable] = value;
  }
  values.resize(d);
  return values;
}

Polygon2D project_2d(const HalfspaceSystem& system, const RationalVector& x_axis, const RationalVector& y_axis) {
  return Projection2D::compute(system, x_axis, y_axis).polygon();
}

HalfspaceSystem to_halfspace_system(const ConstraintSet& set) {
  std::vector<std::string> names;
  for (int i = 1; i <= set.system().rank; ++i) names.push_back("l" + std::to_string(i));
  for (int i = 1; i <= set.system().spin_slots; ++i) names.push_back("m" + std::to_string(i));
  HalfspaceSystem system(std::move(names));
  for (const auto& c : set.constraints()) {
    if (c.relation == Relation::kEqual) {
      system.add_equality(c.coefficients, c.bound);
    } else {
      system.add_inequality(c.coefficients, c.bound);
    }
  }
  return system;
}

// ------------------------------------------------------------ d-shell instances

HalfspaceSystem dshell_low_spin_system() {
  HalfspaceSystem system({"l1", "l2", "l3", "l4", "l5", "mu"});
  const Rational half(1, 2);
  //                     l1  l2  l3  l4    l5   mu
  system.add_inequality({1, 0, 0, half, half, 0}, 2);
  system.add_inequality({2, -2, 0, 0, 0, 1}, 3);    // mu <= 3 - 2(l1 - l2)
  system.add_inequality({0, 2, -2, 0, 0, 1}, 3);    // mu <= 3 - 2(l2 - l3)
  system.add_inequality({2, 0, -2, 0, 0, -1}, 3);   // mu >= 2(l1 - l3) - 3
  system.add_inequality({4, -2, 0, 2, 0, -1}, 7);   // mu >= 4 l1 - 2 l2 + 2 l4 - 7
  for (std::size_t i = 0; i + 1 < 5; ++i) {
    RationalVector row(6, Rational(0));
    row[i] = -1;
    row[i + 1] = 1;
    system.add_inequality(std::move(row), 0);
  }
  system.add_inequality({0, 0, 0, 0, -1, 0}, 0);
  system.add_inequality({1, 0, 0, 0, 0, 0}, 2);
  system.add_equality({1, 1, 1, 1, 1, 0}, 3);
  system.add_inequality({0, 0, 0, 0, 0, -1}, 0);
  system.add_inequality({0, 0, 0, 0, 0, 1}, 1);
  return system;
}

DShellEdges dshell_d7_edges() {
  const auto weights = d7_moment_weights();
  const auto vertex = [&](const data::PullbackPoint& p) {
    return Point2{p.orbital[0], moment_exact(p.spin, weights)};
  };
  DShellEdges edges;
  edges.a = vertex(data::pullback_a());
  edges.b = vertex(data::pullback_b());
  const Rational slope = (edges.b.y - edges.a.y) / (edges.b.x - edges.a.x);
  edges.edge_ab = {slope, edges.a.y - slope * edges.a.x};
  edges.edge_b = {-9, 16};
  if (edges.edge_b.at(edges.b.x) != edges.b.y) {
    throw InconsistencyError("vertex B does not lie on mu = 16 - 9 n_t");
  }
  return edges;
}

PointClassification classify_point(double n_t, double mu, const DShellEdges& edges, double tol) {
  const auto residual = [&](const EdgeLine& line) { return mu - (to_double(line.slope) * n_t + to_double(line.intercept)); };
  const auto distance = [&](const EdgeLine& line, double r) {
    const double s = to_double(line.slope);
    return std::abs(r) / std::sqrt(1.0 + s * s);
  };
  PointClassification out;
  out.residual_ab = residual(edges.edge_ab);
  out.residual_b = residual(edges.edge_b);
  out.distance_ab = distance(edges.edge_ab, out.residual_ab);
  out.distance_b = distance(edges.edge_b, out.residual_b);
  out.below_ab = out.residual_ab <= tol;
  out.below_b = out.residual_b <= tol;
  out.pinned_to_ab = std::abs(out.residual_ab) <= tol && n_t >= to_double(edges.a.x) && n_t <= to_double(edges.b.x);
  return out;
}

std::string emit_polygon(const Polygon2D& polygon, PolygonFormat format) {
  if (polygon.empty()) throw ArgumentError("cannot emit an empty polygon");
  std::ostringstream out;
  if (format == PolygonFormat::kCsv) {
    for (const auto& v : polygon.vertices) out << format_double(to_double(v.x)) << ',' << format_double(to_double(v.y)) << '\n';
    const auto& first = polygon.vertices.front();
    out << format_double(to_double(first.x)) << ',' << format_double(to_double(first.y)) << '\n';
  } else {
    out << '[';
    for (std::size_t i = 0; i < polygon.vertices.size(); ++i) {
      const auto& v = polygon.vertices[i];
      out << (i ? "," : "") << '[' << format_double(to_double(v.x)) << ',' << format_double(to_double(v.y)) << ']';
    }
    out << "]\n";
  }
  return out.str();
}

}  // namespace nrep

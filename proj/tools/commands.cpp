// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <nrep/constraints.hpp>
#include <nrep/datasets.hpp>
#include <nrep/errors.hpp>
#include <nrep/fock.hpp>
#include <nrep/io.hpp>
#include <nrep/pinning.hpp>
#include <nrep/polytope.hpp>
#include <nrep/rdm.hpp>
#include <nrep/spin.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace nrep::cli {

using nlohmann::json;

namespace {

struct RunConfig {
  int n = 3;
  int r = 6;
  long count = 1000;
  std::uint64_t seed = 1;
  std::optional<double> tol_pin;
  std::optional<double> tol_sat;
  bool json_output = false;
  std::string out_path;
  std::string input_path;
  std::string preset;
  std::string axes = "l1,mu";
  std::string format = "csv";
};

/// Input problems that map to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.out_path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + config.out_path + "'");
  file << text;
}

std::string fmt(const char* spec, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, spec, value == 0.0 ? 0.0 : value);
  return buffer;
}

std::string join(std::span<const double> values, const char* spec) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? " " : "") + fmt(spec, values[i]);
  return out;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

std::vector<double> spectrum_of(const FermionState& state) {
  return natural_occupations(compute_rdm(state)).spectrum.values();
}

double violation_of(const AffineConstraint& c, const EvaluatedConstraint& e) {
  return c.relation == Relation::kEqual ? std::abs(e.residual) : -e.residual;
}

bool violates(const AffineConstraint& c, const EvaluatedConstraint& e) {
  return c.relation == Relation::kEqual ? std::abs(e.residual) > kEqualityViolationTolerance
                                        : e.residual < -kInequalityViolationTolerance;
}

json evaluation_json(const EvaluationReport& report) { return json::parse(io::evaluation_to_json(report)); }

void print_evaluation(std::ostream& out, const ConstraintSet& set, const EvaluationReport& report) {
  out << pad("constraint", 22) << pad("expression", 42) << pad("residual", 14) << "status\n";
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    out << pad(e.label, 22) << pad(set.constraints()[i].expression(), 42) << pad(fmt("%.3e", e.residual), 14)
        << to_string(e.status) << '\n';
  }
}

// ------------------------------------------------------------------- sample

int cmd_sample(const RunConfig& config, std::ostream& out) {
  if (config.n < 1 || config.r < config.n || config.r > kMaxRank) {
    throw InputError("unsupported (n, r) = (" + std::to_string(config.n) + ", " + std::to_string(config.r) + ")");
  }
  const double tol_sat = config.tol_sat.value_or(kDefaultSaturationTolerance);
  const ConstraintSet set = catalog(config.n, config.r);
  const auto& rows = set.constraints();

  struct Extremal {
    double residual = INFINITY;
    long sample = -1;
    std::vector<double> lambda;
  };
  std::vector<long> saturated(rows.size(), 0);
  std::vector<Extremal> extremal(rows.size());
  double max_inequality_violation = -INFINITY;
  double max_equality_deviation = 0.0;
  long violations = 0;
  std::optional<std::pair<long, std::string>> first_violation;

  for (long s = 0; s < config.count; ++s) {
    const FermionState state = random_state(config.n, config.r, mix_seed(config.seed, static_cast<std::uint64_t>(s)));
    const std::vector<double> lambda = spectrum_of(state);
    const EvaluationReport report = evaluate(set, lambda, tol_sat);
    bool bad = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& e = report.entries[i];
      if (e.status == Status::kSaturated) ++saturated[i];
      const double v = violation_of(rows[i], e);
      if (rows[i].relation == Relation::kEqual) {
        max_equality_deviation = std::max(max_equality_deviation, v);
      } else {
        max_inequality_violation = std::max(max_inequality_violation, v);
      }
      if (violates(rows[i], e)) {
        bad = true;
        if (!first_violation) first_violation = {s, rows[i].label};
      }
      if (rows[i].relation == Relation::kLessEqual && e.residual < extremal[i].residual) {
        extremal[i] = {e.residual, s, lambda};
      }
    }
    if (bad) ++violations;
  }

  const bool ok = violations == 0;
  if (config.json_output) {
    json hist = json::object();
    json ext = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      hist[rows[i].label] = saturated[i];
      if (!rows[i].is_base() && extremal[i].sample >= 0) {
        ext.push_back({{"label", rows[i].label},
                       {"min_residual", extremal[i].residual},
                       {"sample", extremal[i].sample},
                       {"lambda", extremal[i].lambda}});
      }
    }
    json report{{"command", "sample"},
                {"n", config.n},
                {"r", config.r},
                {"count", config.count},
                {"seed", config.seed},
                {"completeness", to_string(set.completeness())},
                {"saturation_tolerance", tol_sat},
                {"max_inequality_violation", max_inequality_violation},
                {"max_equality_deviation", max_equality_deviation},
                {"violating_samples", violations},
                {"saturation_histogram", hist},
                {"extremal", ext},
                {"ok", ok}};
    if (first_violation) report["first_violation"] = {{"sample", first_violation->first}, {"label", first_violation->second}};
    write_output(config, report.dump(2) + "\n", out);
  } else {
    std::ostringstream text;
    text << "sample: n=" << config.n << " r=" << config.r << " count=" << config.count << " seed=" << config.seed
         << " catalog=" << to_string(set.completeness()) << " (" << rows.size() << " rows)\n";
    text << "max inequality violation: " << fmt("%.3e", max_inequality_violation) << "  (must be <= "
         << fmt("%.0e", kInequalityViolationTolerance) << ")\n";
    text << "max equality deviation:   " << fmt("%.3e", max_equality_deviation) << "  (must be <= "
         << fmt("%.0e", kEqualityViolationTolerance) << ")\n";
    text << "violating samples: " << violations << '\n';
    if (first_violation) {
      text << "first violation: sample " << first_violation->first << ", " << first_violation->second << '\n';
    }
    text << "\nsaturation histogram (tol " << fmt("%.0e", tol_sat) << ")\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      text << "  " << pad(rows[i].label, 24) << saturated[i] << '\n';
    }
    text << "\nclosest approach per generalized constraint\n";
    bool any = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].is_base() || extremal[i].sample < 0) continue;
      any = true;
      text << "  " << pad(rows[i].label, 24) << "min residual " << fmt("%.3e", extremal[i].residual) << "  sample "
           << extremal[i].sample << "  lambda " << join(extremal[i].lambda, "%.6f") << '\n';
    }
    if (!any) text << "  (none beyond base rows)\n";
    text << (ok ? "result: no violations\n" : "result: VIOLATION\n");
    write_output(config, text.str(), out);
  }
  return ok ? kOk : kViolation;
}

// -------------------------------------------------------------------- check

int cmd_check(const RunConfig& config, std::ostream& out) {
  const io::SpectrumData data = io::parse_spectrum(read_file(config.input_path));
  const double tol_sat = config.tol_sat.value_or(kDefaultSaturationTolerance);
  const double tol_pin = config.tol_pin.value_or(kExperimentalPinningTolerance);
  const ConstraintSet set = catalog(data.n, data.r);
  const EvaluationReport evaluation = evaluate(set, data.lambda, tol_sat);
  const PinningReport pinning = detect(set, data.lambda, tol_pin);
  const bool admissible = evaluation.admissible();

  if (config.json_output) {
    json report{{"command", "check"},
                {"n", data.n},
                {"r", data.r},
                {"lambda", data.lambda},
                {"completeness", to_string(set.completeness())},
                {"admissible", admissible},
                {"evaluation", evaluation_json(evaluation)},
                {"pinning", json::parse(io::pinning_to_json(pinning, {}))}};
    write_output(config, report.dump(2) + "\n", out);
  } else {
    std::ostringstream text;
    text << "check: n=" << data.n << " r=" << data.r << " catalog=" << to_string(set.completeness()) << '\n';
    text << "lambda: " << join(data.lambda, "%.6f") << "\n\n";
    print_evaluation(text, set, evaluation);
    text << "\npinned (|residual| <= " << fmt("%.0e", tol_pin) << ")\n";
    for (const auto& p : pinning.saturated) {
      text << "  " << pad(p.label, 24) << pad(set.find(p.label).expression(), 42) << fmt("%.3e", p.residual) << '\n';
    }
    text << (admissible ? "result: admissible\n" : "result: INADMISSIBLE\n");
    write_output(config, text.str(), out);
  }
  return admissible ? kOk : kInadmissible;
}

// ---------------------------------------------------------------------- pin

struct PinAnalysis {
  std::vector<double> lambda;
  PinningReport pinning;
  std::vector<io::RuleOutcome> rules;
  std::size_t filtered_basis = 0;
  std::vector<std::vector<int>> support;
  double outside_weight = 0.0;
  std::optional<StructuredAmplitudes> reconstruction;
  std::string reconstruction_note;
};

PinAnalysis analyse_pinning(const FermionState& state, double tol) {
  PinAnalysis a;
  const FermionState natural = to_natural_basis(state);
  const NaturalFrame frame = natural_occupations(compute_rdm(natural));
  a.lambda = frame.spectrum.values();
  const ConstraintSet set = catalog(state.n_particles(), state.rank());
  a.pinning = detect(set, a.lambda, tol);

  std::vector<SelectionRule> rules;
  for (const auto& p : a.pinning.saturated) {
    io::RuleOutcome outcome{p.label, std::nullopt, "", -1.0};
    try {
      outcome.rule = selection_rule(set.find(p.label), state.n_particles());
      rules.push_back(*outcome.rule);
    } catch (const UnsupportedRuleError& e) {
      outcome.note = e.what();
    }
    a.rules.push_back(std::move(outcome));
  }
  const FermionState aligned = align_degenerate_orbitals(natural, frame.spectrum, rules);
  for (auto& outcome : a.rules) {
    if (outcome.rule) outcome.eigen_residual = verify_pinned_state(aligned, *outcome.rule);
  }
  const auto allowed = filter_basis(state.n_particles(), state.rank(), rules);
  a.filtered_basis = allowed.size();
  for (const auto& [det, amp] : aligned.amplitudes()) {
    if (std::norm(amp) <= 1e-20) continue;
    if (std::find(allowed.begin(), allowed.end(), det) == allowed.end()) {
      a.outside_weight += std::norm(amp);
    } else {
      a.support.push_back(det.orbitals());
    }
  }
  if (state.n_particles() == 3 && state.rank() == 7) {
    try {
      a.reconstruction = reconstruct_structured(std::span<const double>(a.lambda), std::max(tol, 1e-8));
    } catch (const std::exception& e) {
      a.reconstruction_note = e.what();
    }
  }
  return a;
}

int cmd_pin(const RunConfig& config, std::ostream& out) {
  FermionState state = io::parse_state(read_file(config.input_path));
  const double norm = state.norm();
  if (norm == 0.0) throw InputError("state has no amplitudes");
  const bool renormalized = std::abs(norm - 1.0) > kNormTolerance;
  if (renormalized) state = state.normalized();
  const double tol = config.tol_pin.value_or(kSyntheticPinningTolerance);
  const PinAnalysis a = analyse_pinning(state, tol);
  const std::size_t pinned_inequalities = a.pinning.inequality_count();

  std::vector<std::string> orbital_pins;
  for (std::size_t i = 0; i < a.lambda.size(); ++i) {
    if (std::abs(a.lambda[i] - 1.0) <= tol) orbital_pins.push_back(std::to_string(i + 1) + ":1");
    if (std::abs(a.lambda[i]) <= tol) orbital_pins.push_back(std::to_string(i + 1) + ":0");
  }

  if (config.json_output) {
    json report{{"command", "pin"},
                {"n", state.n_particles()},
                {"r", state.rank()},
                {"input_norm", norm},
                {"lambda", a.lambda},
                {"pinned_inequalities", pinned_inequalities},
                {"pinned_orbitals", orbital_pins},
                {"pinning", json::parse(io::pinning_to_json(a.pinning, a.rules))},
                {"filtered_basis_size", a.filtered_basis},
                {"support", a.support},
                {"weight_outside_rules", a.outside_weight}};
    if (a.reconstruction) {
      report["reconstruction"] = json::parse(io::reconstruction_to_json(*a.reconstruction));
    } else if (!a.reconstruction_note.empty()) {
      report["reconstruction_note"] = a.reconstruction_note;
    }
    write_output(config, report.dump(2) + "\n", out);
    return kOk;
  }

  std::ostringstream text;
  text << "pin: n=" << state.n_particles() << " r=" << state.rank() << " tol=" << fmt("%.0e", tol) << '\n';
  if (renormalized) text << "input norm " << fmt("%.12g", norm) << ", renormalized\n";
  text << "natural occupations: " << join(a.lambda, "%.10f") << '\n';
  if (pinned_inequalities == 0) {
    text << "no pinning at tol=" << fmt("%.0e", tol) << '\n';
  }
  if (!orbital_pins.empty()) {
    text << "orbitals pinned to 0/1:";
    for (const auto& p : orbital_pins) text << ' ' << p;
    text << (orbital_pins.size() == a.lambda.size() ? "  (all orbitals)\n" : "\n");
  }
  text << "\nsaturated constraints and selection rules\n";
  for (std::size_t i = 0; i < a.pinning.saturated.size(); ++i) {
    const auto& p = a.pinning.saturated[i];
    const auto& outcome = a.rules[i];
    text << "  " << pad(p.label, 22) << pad(fmt("%.3e", p.residual), 12);
    if (outcome.rule) {
      text << "rule |det ∩ {" << join_ints(outcome.rule->orbitals) << "}| = " << outcome.rule->count
           << "  residual " << fmt("%.3e", outcome.eigen_residual) << '\n';
    } else {
      text << "no rule\n";
    }
  }
  text << "\ndeterminants allowed by all rules: " << a.filtered_basis << '\n';
  text << "state support (" << a.support.size() << " determinants):";
  for (const auto& d : a.support) text << " [" << join_ints(d) << "]";
  text << "\nweight outside the rules: " << fmt("%.3e", a.outside_weight) << '\n';
  if (a.reconstruction) {
    const auto& s = *a.reconstruction;
    text << "\nreconstruction |alpha|^2=" << fmt("%.10f", s.alpha_sq) << " |beta|^2=" << fmt("%.10f", s.beta_sq)
         << " |gamma|^2=" << fmt("%.10f", s.gamma_sq) << "\n  |delta|^2 estimates "
         << join(s.delta_sq_estimates, "%.10f") << "  consistency " << fmt("%.3e", s.consistency_residual) << '\n';
  } else if (!a.reconstruction_note.empty()) {
    text << "\nreconstruction not applicable: " << a.reconstruction_note << '\n';
  }
  write_output(config, text.str(), out);
  return kOk;
}

// ------------------------------------------------------------------ demo-be

int cmd_demo_be(const RunConfig& config, std::ostream& out) {
  const std::vector<double> full = data::beryllium_occupations();
  int n = data::kBerylliumElectrons;
  std::vector<double> reduced;
  std::vector<int> filled, empty;
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (full[i] >= 1.0 - kBerylliumReductionTolerance) {
      filled.push_back(static_cast<int>(i) + 1);
      --n;
    } else if (full[i] <= kBerylliumReductionTolerance) {
      empty.push_back(static_cast<int>(i) + 1);
    } else {
      reduced.push_back(full[i]);
    }
  }
  const int r = static_cast<int>(reduced.size());
  const double tol_sat = config.tol_sat.value_or(kDefaultSaturationTolerance);
  const double tol_pin = config.tol_pin.value_or(kExperimentalPinningTolerance);
  const ConstraintSet set = catalog(n, r);
  const EvaluationReport evaluation = evaluate(set, reduced, tol_sat);
  const PinningReport pinning = detect(set, reduced, tol_pin);

  std::vector<io::RuleOutcome> outcomes;
  std::vector<SelectionRule> rules;
  for (const auto& p : pinning.saturated) {
    const auto& c = set.find(p.label);
    if (c.is_base()) continue;
    io::RuleOutcome outcome{p.label, std::nullopt, "", -1.0};
    try {
      outcome.rule = selection_rule(c, n);
      rules.push_back(*outcome.rule);
    } catch (const UnsupportedRuleError& e) {
      outcome.note = e.what();
    }
    outcomes.push_back(std::move(outcome));
  }
  std::vector<std::vector<int>> allowed;
  for (SlaterDet d : filter_basis(n, r, rules)) allowed.push_back(d.orbitals());
  std::optional<StructuredAmplitudes> amplitudes;
  std::string note;
  try {
    amplitudes = reconstruct_structured(std::span<const double>(reduced), tol_pin);
  } catch (const std::exception& e) {
    note = e.what();
  }

  if (config.json_output) {
    json report{{"command", "demo-be"},
                {"occupations", full},
                {"reduction_tolerance", kBerylliumReductionTolerance},
                {"filled_orbitals", filled},
                {"empty_orbitals", empty},
                {"n", n},
                {"r", r},
                {"reduced", reduced},
                {"evaluation", evaluation_json(evaluation)},
                {"pinning", json::parse(io::pinning_to_json(pinning, outcomes))},
                {"allowed_determinants", allowed}};
    if (amplitudes) report["reconstruction"] = json::parse(io::reconstruction_to_json(*amplitudes));
    if (!note.empty()) report["reconstruction_note"] = note;
    write_output(config, report.dump(2) + "\n", out);
    return kOk;
  }

  std::ostringstream text;
  text << "beryllium natural occupations (10 spin-orbitals, N=4)\n  " << join(full, "%.6f") << '\n';
  text << "reduction (tol " << fmt("%.0e", kBerylliumReductionTolerance) << "): filled {" << join_ints(filled)
       << "}, empty {" << join_ints(empty) << "} -> N=" << n << ", r=" << r << '\n';
  text << "reduced spectrum: " << join(reduced, "%.6f") << "\n\n";
  text << "generalized constraints (saturation tol " << fmt("%.0e", tol_sat) << ")\n";
  text << "  " << pad("constraint", 18) << pad("expression", 30) << pad("value", 12) << pad("residual", 14) << "status\n";
  for (std::size_t i = 0; i < evaluation.entries.size(); ++i) {
    if (set.constraints()[i].is_base()) continue;
    const auto& e = evaluation.entries[i];
    text << "  " << pad(e.label, 18) << pad(set.constraints()[i].expression(), 30) << pad(fmt("%.6f", e.value), 12)
         << pad(fmt("%.3e", e.residual), 14) << to_string(e.status) << '\n';
  }
  text << "\npinned at tol " << fmt("%.0e", tol_pin) << ":\n";
  for (const auto& o : outcomes) {
    text << "  " << pad(o.label, 18);
    if (o.rule) {
      text << "|det ∩ {" << join_ints(o.rule->orbitals) << "}| = " << o.rule->count << '\n';
    } else {
      text << "no rule (" << o.note << ")\n";
    }
  }
  text << "determinants allowed by the rules:";
  for (const auto& d : allowed) text << " [" << join_ints(d) << "]";
  text << "\n\n";
  if (amplitudes) {
    const auto& s = *amplitudes;
    text << "structured-state reconstruction\n";
    text << "  |alpha|^2 = l3      = " << fmt("%.6f", s.alpha_sq) << '\n';
    text << "  |beta|^2  = l5      = " << fmt("%.6f", s.beta_sq) << '\n';
    text << "  |gamma|^2 = l7      = " << fmt("%.6f", s.gamma_sq) << '\n';
    text << "  |delta|^2 = l2 - l3 = " << fmt("%.6f", s.delta_sq_estimates[0]) << '\n';
    text << "  |delta|^2 = l4 - l5 = " << fmt("%.6f", s.delta_sq_estimates[1]) << '\n';
    text << "  |delta|^2 = l6 - l7 = " << fmt("%.6f", s.delta_sq_estimates[2]) << '\n';
    text << "  consistency residual  " << fmt("%.1e", s.consistency_residual) << '\n';
  } else {
    text << "reconstruction failed: " << note << '\n';
  }
  write_output(config, text.str(), out);
  return kOk;
}

// ---------------------------------------------------------------- demo-iron

std::string csv_row(const std::string& series, double x, double y) {
  return series + "," + fmt("%.12g", x) + "," + fmt("%.12g", y) + "\n";
}

std::string line_text(const EdgeLine& line) {
  const bool negative = line.intercept < 0;
  return to_string(line.slope) + " n_t " + (negative ? "- " : "+ ") +
         to_string(negative ? Rational(-line.intercept) : line.intercept);
}

int cmd_demo_iron(const RunConfig& config, std::ostream& out) {
  const DShellEdges edges = dshell_d7_edges();
  const double tol = config.tol_pin.value_or(kIronEdgeTolerance);
  const PointClassification iron = classify_point(data::kIronNt, data::kIronMoment, edges, tol);
  const SpinSpectrum spin = iron_spin_occupations();
  const double iron_moment = moment(spin, d7_moment_weights());
  const CubicOccupations cubic = cubic_occupations(data::kIronNt);
  const HalfspaceSystem d3 = dshell_low_spin_system();
  const Polygon2D polygon = project_2d(d3, d3.axis("l1"), d3.axis("mu"));

  // Edge lines clipped to the window n_t in [1, 2], mu in [0, 3].
  const auto clip = [](const EdgeLine& line) {
    std::vector<Point2> pts;
    const Rational x0(1), x1(2), y0(0), y1(3);
    for (const Rational& x : {x0, x1}) {
      const Rational y = line.at(x);
      if (y >= y0 && y <= y1) pts.push_back({x, y});
    }
    for (const Rational& y : {y0, y1}) {
      const Rational x = (y - line.intercept) / line.slope;
      if (x > x0 && x < x1) pts.push_back({x, y});
    }
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) { return a.x < b.x; });
    return pts;
  };

  std::ostringstream csv;
  csv << "series,x,y\n";
  for (const auto& p : clip(edges.edge_ab)) csv << csv_row("edge_ab", to_double(p.x), to_double(p.y));
  for (const auto& p : clip(edges.edge_b)) csv << csv_row("edge_b", to_double(p.x), to_double(p.y));
  csv << csv_row("vertex_a", to_double(edges.a.x), to_double(edges.a.y));
  csv << csv_row("vertex_b", to_double(edges.b.x), to_double(edges.b.y));
  csv << csv_row(iron.pinned_to_ab ? "iron_pinned_ab" : "iron", data::kIronNt, data::kIronMoment);
  for (const auto& v : polygon.vertices) csv << csv_row("d3_low_spin", to_double(v.x), to_double(v.y));
  if (!polygon.empty()) {
    csv << csv_row("d3_low_spin", to_double(polygon.vertices.front().x), to_double(polygon.vertices.front().y));
  }

  if (config.json_output) {
    json poly = json::array();
    for (const auto& v : polygon.vertices) poly.push_back({to_double(v.x), to_double(v.y)});
    json report{{"command", "demo-iron"},
                {"edge_ab", {{"slope", to_string(edges.edge_ab.slope)}, {"intercept", to_string(edges.edge_ab.intercept)}}},
                {"edge_b", {{"slope", to_string(edges.edge_b.slope)}, {"intercept", to_string(edges.edge_b.intercept)}}},
                {"a", {to_string(edges.a.x), to_string(edges.a.y)}},
                {"b", {to_string(edges.b.x), to_string(edges.b.y)}},
                {"iron", {{"n_t", data::kIronNt},
                          {"mu", data::kIronMoment},
                          {"n_e", cubic.splitting.n_e},
                          {"residual_ab", iron.residual_ab},
                          {"residual_b", iron.residual_b},
                          {"distance_ab", iron.distance_ab},
                          {"distance_b", iron.distance_b},
                          {"tolerance", tol},
                          {"pinned_to_ab", iron.pinned_to_ab}}},
                {"spin_occupations", spin.values()},
                {"spin_moment", iron_moment},
                {"d3_polygon", poly}};
    out << report.dump(2) << '\n';
    if (!config.out_path.empty()) write_output(config, csv.str(), out);
    return kOk;
  }

  std::ostringstream text;
  text << "# d7 pinning edges in the (n_t, mu) plane\n";
  text << "# edge AB: mu = " << line_text(edges.edge_ab) << ", n_t in [" << to_string(edges.a.x) << ", " << to_string(edges.b.x) << "]\n";
  text << "# edge B:  mu = " << line_text(edges.edge_b) << '\n';
  text << "# A = (" << to_string(edges.a.x) << ", " << to_string(edges.a.y) << ") = (" << fmt("%.12g", to_double(edges.a.x))
       << ", " << fmt("%.12g", to_double(edges.a.y)) << ")\n";
  text << "# B = (" << to_string(edges.b.x) << ", " << to_string(edges.b.y) << ") = (" << fmt("%.12g", to_double(edges.b.x))
       << ", " << fmt("%.12g", to_double(edges.b.y)) << ")\n";
  text << "# iron: n_t = " << fmt("%.12g", data::kIronNt) << ", n_e = " << fmt("%.4f", cubic.splitting.n_e)
       << ", mu = " << fmt("%.12g", data::kIronMoment) << '\n';
  text << "# |mu - (7 n_t - 8)| = " << fmt("%.3f", std::abs(iron.residual_ab)) << ", distance to AB "
       << fmt("%.4f", iron.distance_ab) << ", tol " << fmt("%.12g", tol) << " -> "
       << (iron.pinned_to_ab ? "pinned-to-AB" : "not pinned") << '\n';
  text << "# mu - (16 - 9 n_t) = " << fmt("%.3f", iron.residual_b) << '\n';
  text << "# spin occupations " << join(spin.values(), "%.2f") << " -> moment " << fmt("%.4f", iron_moment) << '\n';
  text << "# d3 low-spin polygon in (l1, mu): " << polygon.vertices.size() << " vertices\n";
  if (config.out_path.empty()) {
    out << text.str() << csv.str();
  } else {
    out << text.str();
    write_output(config, text.str() + csv.str(), out);
  }
  return kOk;
}

// ------------------------------------------------------------------ project

int cmd_project(const RunConfig& config, std::ostream& out) {
  std::optional<HalfspaceSystem> system;
  if (!config.preset.empty()) {
    if (config.preset != "d3-low-spin") throw InputError("unknown preset '" + config.preset + "' (known: d3-low-spin)");
    system = dshell_low_spin_system();
  } else if (!config.input_path.empty()) {
    system = io::parse_halfspace_system(read_file(config.input_path));
  } else {
    throw InputError("project needs a system file or --preset");
  }
  const auto comma = config.axes.find(',');
  if (comma == std::string::npos) throw InputError("--axes expects two names separated by a comma");
  RationalVector x_axis, y_axis;
  try {
    x_axis = system->axis(config.axes.substr(0, comma));
    y_axis = system->axis(config.axes.substr(comma + 1));
  } catch (const ArgumentError& e) {
    throw InputError(std::string("--axes: ") + e.what());
  }
  PolygonFormat format;
  if (config.format == "csv") {
    format = PolygonFormat::kCsv;
  } else if (config.format == "json") {
    format = PolygonFormat::kJson;
  } else {
    throw InputError("--format must be csv or json");
  }
  const Polygon2D polygon = project_2d(*system, x_axis, y_axis);
  if (polygon.empty()) return kProjection;
  write_output(config, emit_polygon(polygon, format), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nrep: fermionic N-representability toolkit"};
  app.require_subcommand(1);
  RunConfig config;
  if (const char* env = std::getenv("NREP_SEED")) {
    try {
      config.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: NREP_SEED must be a non-negative integer\n";
      return kInputError;
    }
  }
  double tol_pin = 0.0;
  double tol_sat = 0.0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", config.json_output, "Machine-readable JSON report");
    sub->add_option("--out", config.out_path, "Write the report to PATH");
    sub->add_option("--tol-pin", tol_pin, "Pinning tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-sat", tol_sat, "Saturation tolerance")->check(CLI::PositiveNumber);
  };

  auto* sample = app.add_subcommand("sample", "Validate the catalog on random states");
  sample->add_option("--n", config.n, "Particle count")->required();
  sample->add_option("--r", config.r, "Rank")->required();
  sample->add_option("--count", config.count, "Number of random states")->check(CLI::PositiveNumber);
  sample->add_option("--seed", config.seed, "Campaign seed (default: NREP_SEED or 1)");
  add_common(sample);

  auto* check = app.add_subcommand("check", "Evaluate a spectrum file against the catalog");
  check->add_option("spectrum", config.input_path, "Spectrum JSON")->required();
  add_common(check);

  auto* pin = app.add_subcommand("pin", "Pinning analysis of a state file");
  pin->add_option("state", config.input_path, "State JSON")->required();
  add_common(pin);

  auto* demo_be = app.add_subcommand("demo-be", "Beryllium pinning demo");
  add_common(demo_be);
  auto* demo_iron = app.add_subcommand("demo-iron", "Iron d-shell edge demo (CSV plot data)");
  add_common(demo_iron);

  auto* project = app.add_subcommand("project", "Project a halfspace system to two axes");
  project->add_option("system", config.input_path, "Halfspace system JSON");
  project->add_option("--preset", config.preset, "Built-in system (d3-low-spin)");
  project->add_option("--axes", config.axes, "Two variable names, e.g. l1,mu");
  project->add_option("--format", config.format, "csv or json");
  add_common(project);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (tol_pin > 0.0) config.tol_pin = tol_pin;
  if (tol_sat > 0.0) config.tol_sat = tol_sat;

  try {
    if (sample->parsed()) return cmd_sample(config, out);
    if (check->parsed()) return cmd_check(config, out);
    if (pin->parsed()) return cmd_pin(config, out);
    if (demo_be->parsed()) return cmd_demo_be(config, out);
    if (demo_iron->parsed()) return cmd_demo_iron(config, out);
    if (project->parsed()) {
      const int code = cmd_project(config, out);
      if (code == kProjection) err << "error: system is infeasible (empty projection)\n";
      return code;
    }
  } catch (const UnboundedError& e) {
    err << "error: " << e.what() << '\n';
    return kProjection;
  } catch (const FormatError& e) {
    err << "error: " << config.input_path << ": " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace nrep::cli

// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "nrep/io.hpp"

#include "nrep/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <set>

namespace nrep::io {

using nlohmann::json;

namespace {

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& object, const char* name, const std::string& path) {
  if (!object.is_object()) throw FormatError(path + ": expected an object");
  const auto it = object.find(name);
  if (it == object.end()) throw FormatError(path + "." + name + ": missing field");
  return *it;
}

int integer_field(const json& object, const char* name, const std::string& path) {
  const json& value = field(object, name, path);
  if (!value.is_number_integer()) throw FormatError(path + "." + name + ": expected an integer");
  return value.get<int>();
}

double number_at(const json& value, const std::string& path) {
  if (!value.is_number()) throw FormatError(path + ": expected a number");
  const double out = value.get<double>();
  if (!std::isfinite(out)) throw FormatError(path + ": expected a finite number");
  return out;
}

const json& array_field(const json& object, const char* name, const std::string& path) {
  const json& value = field(object, name, path);
  if (!value.is_array()) throw FormatError(path + "." + name + ": expected an array");
  return value;
}

std::string indexed(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

Rational rational_at(const json& value, const std::string& path) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_number()) return parse_rational(value.dump());
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
  throw FormatError(path + ": expected a rational string or number");
}

json rational_array(std::span<const Rational> values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

std::vector<HalfspaceRow> read_rows(const json& doc, const char* name, std::size_t width) {
  std::vector<HalfspaceRow> rows;
  if (!doc.contains(name)) return rows;
  const json& list = array_field(doc, name, "$");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = indexed(std::string("$.") + name, i);
    const json& coefficients = array_field(list[i], "coefficients", path);
    if (coefficients.size() != width) {
      throw FormatError(path + ".coefficients: expected " + std::to_string(width) + " entries, got " +
                        std::to_string(coefficients.size()));
    }
    HalfspaceRow row;
    for (std::size_t k = 0; k < width; ++k) {
      row.coefficients.push_back(rational_at(coefficients[k], indexed(path + ".coefficients", k)));
    }
    row.bound = rational_at(field(list[i], "bound", path), path + ".bound");
    rows.push_back(std::move(row));
  }
  return rows;
}

json rows_to_json(const std::vector<HalfspaceRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    out.push_back({{"coefficients", rational_array(row.coefficients)}, {"bound", to_string(row.bound)}});
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------------- states

FermionState parse_state(std::string_view text) {
  const json doc = parse_document(text);
  const int n = integer_field(doc, "n", "$");
  const int r = integer_field(doc, "r", "$");
  if (r < 0 || r > kMaxRank || n < 0 || n > r) {
    throw FormatError("$: unsupported (n, r) = (" + std::to_string(n) + ", " + std::to_string(r) + ")");
  }
  const json& amplitudes = array_field(doc, "amplitudes", "$");
  FermionState state(n, r);
  std::set<SlaterDet> seen;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    const std::string path = indexed("$.amplitudes", i);
    const json& orbitals = array_field(amplitudes[i], "orbitals", path);
    std::vector<int> list;
    for (std::size_t k = 0; k < orbitals.size(); ++k) {
      const std::string opath = indexed(path + ".orbitals", k);
      if (!orbitals[k].is_number_integer()) throw FormatError(opath + ": expected an integer");
      const int o = orbitals[k].get<int>();
      if (o < 1 || o > r) throw FormatError(opath + ": orbital " + std::to_string(o) + " out of range 1.." + std::to_string(r));
      if (!list.empty() && o == list.back()) throw FormatError(opath + ": duplicated orbital " + std::to_string(o));
      if (!list.empty() && o < list.back()) throw FormatError(opath + ": orbitals must be ascending");
      list.push_back(o);
    }
    if (static_cast<int>(list.size()) != n) {
      throw FormatError(path + ".orbitals: expected " + std::to_string(n) + " orbitals, got " + std::to_string(list.size()));
    }
    const double re = amplitudes[i].contains("re") ? number_at(amplitudes[i]["re"], path + ".re") : 0.0;
    const double im = amplitudes[i].contains("im") ? number_at(amplitudes[i]["im"], path + ".im") : 0.0;
    const SlaterDet det = SlaterDet::from_orbitals(list, r);
    if (!seen.insert(det).second) throw FormatError(path + ": duplicated determinant");
    state.add(det, Complex(re, im));
  }
  return state;
}

std::string state_to_json(const FermionState& state) {
  json amplitudes = json::array();
  for (const auto& [det, amp] : state.amplitudes()) {
    amplitudes.push_back({{"orbitals", det.orbitals()}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  return json{{"n", state.n_particles()}, {"r", state.rank()}, {"amplitudes", amplitudes}}.dump(2) + "\n";
}

// ------------------------------------------------------------------ spectra

SpectrumData parse_spectrum(std::string_view text) {
  const json doc = parse_document(text);
  SpectrumData out;
  out.n = integer_field(doc, "n", "$");
  out.r = integer_field(doc, "r", "$");
  if (out.r < 1 || out.r > kMaxRank || out.n < 0 || out.n > out.r) {
    throw FormatError("$: unsupported (n, r) = (" + std::to_string(out.n) + ", " + std::to_string(out.r) + ")");
  }
  const json& lambda = array_field(doc, "lambda", "$");
  if (static_cast<int>(lambda.size()) != out.r) {
    throw FormatError("$.lambda: expected " + std::to_string(out.r) + " entries, got " + std::to_string(lambda.size()));
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) out.lambda.push_back(number_at(lambda[i], indexed("$.lambda", i)));
  return out;
}

std::string spectrum_to_json(int n, std::span<const double> lambda) {
  return json{{"n", n}, {"r", lambda.size()}, {"lambda", std::vector<double>(lambda.begin(), lambda.end())}}.dump() +
         "\n";
}

std::string spectrum_to_json(const Spectrum& spectrum) {
  return spectrum_to_json(spectrum.n_particles(), spectrum.values());
}

std::string rdm_to_json(const OneRDM& rho) {
  json rows = json::array();
  for (int i = 0; i < rho.rank(); ++i) {
    json row = json::array();
    for (int j = 0; j < rho.rank(); ++j) {
      const Complex z = rho.matrix()(i, j);
      row.push_back({z.real(), z.imag()});
    }
    rows.push_back(row);
  }
  return json{{"n", rho.n_particles()}, {"r", rho.rank()}, {"rho", rows}}.dump() + "\n";
}

// -------------------------------------------------------------- constraints

std::string constraint_set_to_json(const ConstraintSet& set) {
  json list = json::array();
  for (const auto& c : set.constraints()) {
    list.push_back({{"label", c.label},
                    {"coefficients", rational_array(c.coefficients)},
                    {"relation", to_string(c.relation)},
                    {"bound", to_string(c.bound)},
                    {"provenance", c.provenance}});
  }
  return json{{"n", set.system().n_particles},
              {"r", set.system().rank},
              {"spin_slots", set.system().spin_slots},
              {"completeness", to_string(set.completeness())},
              {"constraints", list}}
             .dump(2) +
         "\n";
}

HalfspaceSystem parse_halfspace_system(std::string_view text) {
  const json doc = parse_document(text);
  const json& names = array_field(doc, "variables", "$");
  std::vector<std::string> variables;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!names[i].is_string()) throw FormatError(indexed("$.variables", i) + ": expected a string");
    variables.push_back(names[i].get<std::string>());
  }
  if (variables.empty()) throw FormatError("$.variables: at least one variable is required");
  std::optional<HalfspaceSystem> system;
  try {
    system.emplace(variables);
  } catch (const ArgumentError& e) {
    throw FormatError(std::string("$.variables: ") + e.what());
  }
  for (auto& row : read_rows(doc, "equalities", variables.size())) system->add_equality(row.coefficients, row.bound);
  for (auto& row : read_rows(doc, "inequalities", variables.size())) system->add_inequality(row.coefficients, row.bound);
  return *system;
}

std::string halfspace_system_to_json(const HalfspaceSystem& system) {
  return json{{"variables", system.variables()},
              {"equalities", rows_to_json(system.equalities())},
              {"inequalities", rows_to_json(system.inequalities())}}
             .dump(2) +
         "\n";
}

// ------------------------------------------------------------------ reports

std::string evaluation_to_json(const EvaluationReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"label", e.label},
                       {"value", e.value},
                       {"residual", e.residual},
                       {"status", to_string(e.status)},
                       {"base", e.base}});
  }
  return json{{"tolerance", report.tolerance}, {"admissible", report.admissible()}, {"constraints", entries}}.dump(2) +
         "\n";
}

std::string pinning_to_json(const PinningReport& report, std::span<const RuleOutcome> rules) {
  json saturated = json::array();
  for (const auto& p : report.saturated) {
    saturated.push_back({{"label", p.label},
                         {"residual", p.residual},
                         {"status", to_string(p.status)},
                         {"relation", to_string(p.relation)},
                         {"base", p.base}});
  }
  json rule_list = json::array();
  for (const auto& outcome : rules) {
    json entry{{"label", outcome.label}};
    if (outcome.rule) {
      entry["rule"] = {{"set", outcome.rule->orbitals}, {"count", outcome.rule->count}};
    } else {
      entry["rule"] = nullptr;
      entry["note"] = outcome.note;
    }
    if (outcome.eigen_residual >= 0.0) entry["eigen_residual"] = outcome.eigen_residual;
    rule_list.push_back(entry);
  }
  return json{{"tolerance", report.tolerance}, {"saturated", saturated}, {"rules", rule_list}}.dump(2) + "\n";
}

std::string reconstruction_to_json(const StructuredAmplitudes& a) {
  return json{{"alpha_sq", a.alpha_sq},
              {"beta_sq", a.beta_sq},
              {"gamma_sq", a.gamma_sq},
              {"delta_sq_estimates", a.delta_sq_estimates},
              {"delta_sq_mean", a.delta_sq_mean()},
              {"consistency_residual", a.consistency_residual}}
             .dump(2) +
         "\n";
}

}  // namespace nrep::io

// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace nrep {

/// Exact rational with unbounded numerator/denominator.
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

/// Parses "p", "-p", "p/q" or a finite decimal literal ("0.25", "-1.5e-3").
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

bool is_integer(const Rational& value);

}  // namespace nrep

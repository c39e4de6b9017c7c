// Copyright 2026 The nrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "nrep/rational.hpp"

#include "nrep/errors.hpp"

#include <cctype>

namespace nrep {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw FormatError("empty integer in rational '" + std::string(whole) + "'");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw FormatError("malformed rational '" + std::string(whole) + "'");
  cpp_int value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw FormatError("malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? cpp_int(-value) : value;
}

Rational parse_decimal(std::string_view text) {
  std::string_view mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = static_cast<long>(parse_integer(text.substr(e + 1), text));
  }
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  for (std::size_t i = 0; i < mantissa.size(); ++i) {
    const char c = mantissa[i];
    if (c == '.') {
      if (seen_point) throw FormatError("malformed number '" + std::string(text) + "'");
      seen_point = true;
    } else {
      digits.push_back(c);
      if (seen_point && std::isdigit(static_cast<unsigned char>(c))) ++scale;
    }
  }
  Rational value(parse_integer(digits, text));
  const long shift = exponent - scale;
  const cpp_int ten = 10;
  if (shift > 0) value *= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(shift)));
  if (shift < 0) value /= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(-shift)));
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw FormatError("empty rational");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const cpp_int num = parse_integer(text.substr(0, slash), text);
    const cpp_int den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

bool is_integer(const Rational& value) { return boost::multiprecision::denominator(value) == 1; }

}  // namespace nrep

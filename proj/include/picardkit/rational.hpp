#pragma once

#include <regex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "picardkit/errors.hpp"

namespace picardkit {

/// Arbitrary-precision exact rational.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using RationalVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" with decimal digits only. Floats are rejected.
inline Rational parse_rational(const std::string& text) {
  static const std::regex pattern(R"(^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern))
    throw ParseError("not a rational literal: '" + text + "'");
  BigInt num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str());
  BigInt den = m[2].matched ? BigInt(m[2].str()) : BigInt(1);
  if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace picardkit

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace bdluk {

// All arithmetic in the library is exact.  Rat is an arbitrary-precision
// rational kept in lowest terms by the backend.
using Rat = boost::multiprecision::mpq_rational;

// Parses "2/3", "-1/2", "7", "0".  Whitespace is not accepted and the
// denominator must be a positive integer.  Throws ParseError.
Rat parse_rat(const std::string& text);

// Renders reduced form: "2/3", "-1/2", integers without a denominator.
std::string rat_to_string(const Rat& r);

inline const Rat& rat_zero() {
  static const Rat z(0);
  return z;
}
inline const Rat& rat_one() {
  static const Rat o(1);
  return o;
}

}  // namespace bdluk

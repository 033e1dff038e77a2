#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dcm {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational parse_rational(const std::string& s);

}  // namespace dcm

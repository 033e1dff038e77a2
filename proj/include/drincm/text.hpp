#pragma once

#include <array>
#include <map>
#include <string>

namespace dcm::text {

// Exponents of the variables (x, y, t) in a monomial.
using Monomial = std::array<int, 3>;
// A sparse integer polynomial in x, y, t, as produced by the parser.
using ZPoly = std::map<Monomial, long long>;

// Parses expressions built from integers, the variables x, y, t, the
// operators + - * ^ and parentheses. Whitespace is ignored. Integer
// coefficients are reduced modulo `modulus` as they are combined.
// Throws ParseError.
ZPoly parse(const std::string& s, long long modulus);

}  // namespace dcm::text

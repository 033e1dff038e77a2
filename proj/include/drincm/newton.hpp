#pragma once

#include <vector>

#include "drincm/poly.hpp"
#include "drincm/rational.hpp"

namespace dcm {

struct NewtonSlope {
  Rational slope;  // log_q of the absolute value of the roots
  int multiplicity = 0;

  friend bool operator==(const NewtonSlope&, const NewtonSlope&) = default;
};

// Lower convex hull of the points (i, -deg c_i) for H = sum c_i X^i, c_i in A.
// Segments come in increasing slope order; a segment of slope s and width m
// accounts for m roots of absolute value q^s. Roots at X = 0 are not listed.
// Throws ZeroPolynomial when H = 0 or H is constant.
std::vector<NewtonSlope> newton_polygon(const std::vector<PolyA>& H);
// The same from the degree sequence alone (deg -1 marks a zero coefficient).
std::vector<NewtonSlope> newton_polygon_from_degrees(const std::vector<int>& degs);

// The multiset of slopes, one entry per root.
std::vector<Rational> slope_multiset(const std::vector<NewtonSlope>& polygon);

}  // namespace dcm

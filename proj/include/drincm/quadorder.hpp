#pragma once

#include <string>

#include "drincm/poly.hpp"
#include "drincm/rational.hpp"

namespace dcm {

enum class PlaceType { Ramified, Inert, Split };

std::string to_string(PlaceType t);

// Behaviour of the place at infinity in k(sqrt(delta0)). Throws NotSquarefree.
PlaceType classify_infinity(const PolyA& delta0);

// delta = 4 * f0^2 * delta0 with delta0 squarefree and f0 monic.
struct ImagDiscriminant {
  PolyA delta;
  PolyA delta0;
  PolyA f0;
  PlaceType place_type = PlaceType::Ramified;

  FieldRef field() const { return delta.field(); }
};

// Throws SplitAtInfinity, NotSquarefree, DegreeZeroDiscriminant, ZeroPolynomial.
ImagDiscriminant make_discriminant(const PolyA& f0, const PolyA& delta0);
// Recovers f0 and delta0 from delta by factoring.
ImagDiscriminant discriminant_from_delta(const PolyA& delta);

// Kronecker symbol of delta0 at the irreducible v: 0, 1 or -1.
// Throws NotIrreducible.
int chi(const PolyA& v, const PolyA& delta0);

struct EulerFactor {
  PolyA v;
  BigInt l;  // q^deg v
  int chi = 0;
  Rational value;
};

// e_{f0}(v) = (1 - chi)(1 - l^{-v(f0)}) / ((l - chi)(1 - l^{-1})).
// Throws NotDividing when v does not divide f0.
EulerFactor e_factor(const PolyA& v, const PolyA& f0, const PolyA& delta0);

// Throws NotSquarefree.
int genus(const PolyA& delta0);

// Right-hand sides of the lower and upper height bounds, in base-q logs.
double lower_bound_rhs(const ImagDiscriminant& disc, double C_q = 0.0);
double upper_bound_rhs(const ImagDiscriminant& disc, int d, double O_q = 0.0);

// sum_{i=1}^{n} i * a_i * q^{-i}, a_i the number of monic irreducibles of degree i.
Rational mertens_sum(int q, int n);

}  // namespace dcm

#include "drincm/quadorder.hpp"

#include <cmath>

#include "drincm/errors.hpp"
#include "drincm/irreducible.hpp"

namespace dcm {

std::string to_string(PlaceType t) {
  switch (t) {
    case PlaceType::Ramified: return "Ramified";
    case PlaceType::Inert: return "Inert";
    case PlaceType::Split: return "Split";
  }
  return "?";
}

PlaceType classify_infinity(const PolyA& delta0) {
  if (delta0.is_zero()) throw ZeroPolynomial("zero discriminant");
  if (!is_squarefree(delta0)) throw NotSquarefree(to_string(delta0) + " is not squarefree");
  if (delta0.deg() % 2) return PlaceType::Ramified;
  return delta0.field()->is_square_fq(delta0.lc()) ? PlaceType::Split : PlaceType::Inert;
}

ImagDiscriminant make_discriminant(const PolyA& f0, const PolyA& delta0) {
  if (f0.is_zero()) throw ZeroPolynomial("zero conductor");
  const PlaceType pt = classify_infinity(delta0);
  if (pt == PlaceType::Split) throw SplitAtInfinity(to_string(delta0) + " has a square leading coefficient");
  FieldRef F = delta0.field();
  ImagDiscriminant d;
  d.f0 = f0.monic();
  d.delta0 = delta0;
  d.delta = (d.f0 * d.f0 * delta0).scaled(F->from_int(4));
  d.place_type = pt;
  if (d.delta.deg() <= 0) throw DegreeZeroDiscriminant("deg delta must be positive");
  return d;
}

ImagDiscriminant discriminant_from_delta(const PolyA& delta) {
  if (delta.is_zero()) throw ZeroPolynomial("zero discriminant");
  SquarefreeSplit s = squarefree_decompose(delta);
  FieldRef F = delta.field();
  return make_discriminant(s.g, s.delta0.scaled(F->inv(F->from_int(4))));
}

int chi(const PolyA& v, const PolyA& delta0) {
  if (!is_irreducible(v)) throw NotIrreducible(to_string(v) + " is not irreducible");
  const PolyA r = delta0 % v;
  if (r.is_zero()) return 0;
  std::uint64_t l = 1;
  for (int i = 0; i < v.deg(); ++i) l *= static_cast<std::uint64_t>(v.field()->q());
  return powmod(r, (l - 1) / 2, v).is_one() ? 1 : -1;
}

EulerFactor e_factor(const PolyA& v, const PolyA& f0, const PolyA& delta0) {
  if (f0.is_zero() || !divides(v, f0)) throw NotDividing(to_string(v) + " does not divide " + to_string(f0));
  EulerFactor ef;
  ef.v = v;
  ef.chi = chi(v, delta0);
  ef.l = boost::multiprecision::pow(BigInt(v.field()->q()), static_cast<unsigned>(v.deg()));
  const int m = valuation(f0, v);
  const Rational l(ef.l);
  const Rational lm(boost::multiprecision::pow(ef.l, static_cast<unsigned>(m)));
  ef.value = Rational(1 - ef.chi) * (1 - 1 / lm) / ((l - ef.chi) * (1 - 1 / l));
  return ef;
}

int genus(const PolyA& delta0) {
  if (!is_squarefree(delta0)) throw NotSquarefree(to_string(delta0) + " is not squarefree");
  const int d = delta0.deg();
  return d % 2 ? (d - 1) / 2 : (d - 2) / 2;
}

double lower_bound_rhs(const ImagDiscriminant& disc, double C_q) {
  const double q = disc.field()->q();
  const double r = 1.0 / (std::sqrt(q) + 1.0);
  const double deg_delta = disc.delta.deg(), deg_f0 = disc.f0.deg();
  const double loglog = deg_f0 <= 1 ? 0.0 : std::log(deg_f0) / std::log(q);
  return (q * q - 1) * (0.5 - r) * deg_delta / 2 + (0.5 + r) * deg_f0 - 2.25 * loglog - C_q;
}

double upper_bound_rhs(const ImagDiscriminant& disc, int d, double O_q) {
  if (d < 1) throw PreconditionViolated("class number must be positive");
  const double q = disc.field()->q();
  return (1 + (q * q - q) / d) * (q + 1) * disc.delta.deg() / 2.0 + O_q;
}

Rational mertens_sum(int q, int n) {
  Rational s = 0;
  BigInt qi = 1;
  for (int i = 1; i <= n; ++i) {
    qi *= q;
    s += Rational(BigInt(i) * BigInt(count_irreducibles(q, i)), qi);
  }
  return s;
}

}  // namespace dcm

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

#include <boost/container/small_vector.hpp>

#include "drincm/field.hpp"

namespace dcm {

// An element of A = F_q[t]. Coefficients are F_q elements, constant term
// first; the zero polynomial has no coefficients and degree -1.
class PolyA {
 public:
  using Coeffs = boost::container::small_vector<Elem, 12>;

  PolyA() = default;
  explicit PolyA(FieldRef f) : f_(f) {}
  PolyA(FieldRef f, Coeffs c) : f_(f), c_(std::move(c)) { trim(); }

  static PolyA constant(FieldRef f, Elem c);
  static PolyA monomial(FieldRef f, Elem c, int k);
  static PolyA t(FieldRef f) { return monomial(f, 1, 1); }
  // Inverse of encode(): base-q digits become coefficients.
  static PolyA decode(FieldRef f, std::uint64_t code);

  FieldRef field() const { return f_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem lc() const { return c_.empty() ? Elem{0} : c_.back(); }
  Elem operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Elem{0}; }
  const Coeffs& coeffs() const { return c_; }

  PolyA operator-() const;
  PolyA& operator+=(const PolyA& o);
  PolyA& operator-=(const PolyA& o);
  PolyA& operator*=(const PolyA& o) { return *this = *this * o; }
  friend PolyA operator+(PolyA a, const PolyA& b) { return a += b; }
  friend PolyA operator-(PolyA a, const PolyA& b) { return a -= b; }
  friend PolyA operator*(const PolyA& a, const PolyA& b);

  PolyA scaled(Elem c) const;
  PolyA monic() const;
  // Polynomial f(alpha*t + beta).
  PolyA compose_affine(Elem alpha, Elem beta) const;
  PolyA derivative() const;
  Elem eval(Elem x) const;

  // Base-q integer code, injective on polynomials of bounded degree.
  std::uint64_t encode() const;

  friend bool operator==(const PolyA& a, const PolyA& b) { return a.c_ == b.c_; }
  // Orders by degree, then by coefficients from the leading term down.
  friend std::strong_ordering operator<=>(const PolyA& a, const PolyA& b);

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  FieldRef f_ = nullptr;
  Coeffs c_;
};

struct DivRem {
  PolyA quot, rem;
};

// f = quot*g + rem with deg rem < deg g. Throws DivisionByZeroPoly.
DivRem divrem(const PolyA& f, const PolyA& g);
PolyA operator%(const PolyA& f, const PolyA& g);
// Exact division; throws NotDividing when g does not divide f.
PolyA exact_div(const PolyA& f, const PolyA& g);
bool divides(const PolyA& g, const PolyA& f);

// Monic gcd, with gcd(f, 0) = monic(f) and gcd(0, 0) = 0.
PolyA gcd(const PolyA& a, const PolyA& b);
PolyA gcd3(const PolyA& a, const PolyA& b, const PolyA& c);

PolyA pow(PolyA base, unsigned k);
PolyA powmod(PolyA base, std::uint64_t k, const PolyA& m);

// Multiplicity of the irreducible v in f (f != 0).
int valuation(const PolyA& f, const PolyA& v);

// Text format, e.g. "(x+1)*t^2 + 2*t + x"; plain integers when n = 1.
std::string to_string(const PolyA& f);
PolyA parse_poly(FieldRef f, const std::string& s);

}  // namespace dcm

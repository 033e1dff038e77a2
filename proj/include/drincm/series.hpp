#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "drincm/field.hpp"
#include "drincm/poly.hpp"
#include "drincm/rational.hpp"

namespace dcm {

// |x| = q^(half/2), or the marker for a value that is zero to precision.
// All absolute values met here are powers of q with exponent in (1/2)Z.
class AbsValue {
 public:
  AbsValue() = default;
  static AbsValue zero() { return AbsValue(true, 0); }
  static AbsValue from_half_log(std::int64_t half) { return AbsValue(false, half); }
  // |s^i| for the uniformizer s = t^(-1/e).
  static AbsValue of_exponent(std::int64_t i, int e) { return AbsValue(false, -i * (2 / e)); }

  bool is_zero() const { return zero_; }
  // 2*log_q|x|; meaningless for the zero marker.
  std::int64_t half_log() const { return half_; }
  Rational log_q() const { return Rational(half_, 2); }

  friend bool operator==(const AbsValue&, const AbsValue&) = default;
  friend std::strong_ordering operator<=>(const AbsValue& a, const AbsValue& b) {
    if (a.zero_ || b.zero_) return b.zero_ <=> a.zero_;
    return a.half_ <=> b.half_;
  }
  friend AbsValue operator*(AbsValue a, AbsValue b) {
    if (a.zero_ || b.zero_) return zero();
    return from_half_log(a.half_ + b.half_);
  }

  // "q^(3/2)", "q^(2)", "q^(-inf)".
  std::string to_string() const;

 private:
  AbsValue(bool z, std::int64_t h) : zero_(z), half_(h) {}
  bool zero_ = true;
  std::int64_t half_ = 0;
};

constexpr std::int64_t kNoLimit = std::numeric_limits<std::int64_t>::max() / 4;

// A tail-truncated Laurent series over F_{q^2} in s = t^(-1/e), e in {1, 2}:
//   x = sum_{i = i0}^{P - 1} c_i s^i + O(s^P).
// When nonzero to precision, c_{i0} != 0; otherwise only P is kept.
class LaurentSeries {
 public:
  using Coeffs = std::vector<Elem>;

  LaurentSeries() = default;

  static LaurentSeries zero(FieldRef f, int e, std::int64_t prec);
  static LaurentSeries constant(FieldRef f, Elem c, int e, std::int64_t prec);
  static LaurentSeries monomial(FieldRef f, Elem c, std::int64_t exponent, int e, std::int64_t prec);
  // t^k = s^(-e k).
  static LaurentSeries t_power(FieldRef f, std::int64_t k, int e, std::int64_t prec);
  static LaurentSeries from_poly(const PolyA& a, int e, std::int64_t prec);
  // Coefficients for exponents i0, i0+1, ...; normalized on construction.
  static LaurentSeries from_coeffs(FieldRef f, int e, std::int64_t i0, Coeffs c, std::int64_t prec);

  FieldRef field() const { return f_; }
  int e() const { return e_; }
  bool is_zero() const { return zero_; }
  // Leading exponent i0; for a zero series, its precision.
  std::int64_t valuation() const { return zero_ ? prec_ : i0_; }
  std::int64_t prec() const { return prec_; }
  std::int64_t rel_prec() const { return zero_ ? 0 : prec_ - i0_; }
  // Coefficient of s^i; zero outside [i0, P). Throws InsufficientPrecision
  // for i >= P.
  Elem coeff(std::int64_t i) const;
  Elem leading() const { return zero_ ? Elem{0} : c_[0]; }
  const Coeffs& coeffs() const { return c_; }

  AbsValue abs() const {
    return zero_ ? AbsValue::zero() : AbsValue::of_exponent(i0_, e_);
  }

  // Lowers the precision to min(P, prec).
  LaurentSeries truncated(std::int64_t prec) const;
  // Keeps at most `rel` digits past the leading one.
  LaurentSeries truncated_rel(std::int64_t rel) const;
  // Re-expresses an e = 1 series in s' = t^(-1/2) (exponents double).
  LaurentSeries with_e(int e) const;
  // Multiplies by s^k.
  LaurentSeries shifted(std::int64_t k) const;
  LaurentSeries scaled(Elem c) const;
  // Applies a -> a^q to every coefficient (no exponent change).
  LaurentSeries conj_coeffs() const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);

  // Throws InvertZeroToPrecision.
  LaurentSeries inverse() const;
  // x^(q^k), truncated to `max_rel` relative digits.
  LaurentSeries frob_pow(int k, std::int64_t max_rel = kNoLimit) const;
  LaurentSeries pow(std::uint64_t n, std::int64_t max_rel = kNoLimit) const;
  // Canonical square root; requires an even leading exponent and a leading
  // coefficient that is a square in F_{q^2}.
  LaurentSeries sqrt() const;

  // Exact structural equality (same e, precision and coefficients).
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

 private:
  void normalize();

  FieldRef f_ = nullptr;
  int e_ = 1;
  bool zero_ = true;
  std::int64_t i0_ = 0;
  std::int64_t prec_ = 0;
  Coeffs c_;
};

// Low `n` coefficients of the product of two coefficient arrays.
std::vector<Elem> mul_low(const Field& f, const Elem* a, std::size_t na, const Elem* b, std::size_t nb,
                          std::size_t n);
// Product of two polynomials in X whose coefficients are coefficient arrays
// (row k holds the array of X^k); each output row keeps `width` entries.
std::vector<std::vector<Elem>> mul_series_polys(const Field& f, const std::vector<std::vector<Elem>>& A,
                                                const std::vector<std::vector<Elem>>& B, std::size_t width);

// sqrt(delta) with `rel` digits of relative precision. e defaults to 2 for
// odd degree and 1 for even degree; the leading coefficient is the canonical
// root of lc(delta). Throws ZeroPolynomial.
LaurentSeries sqrt_poly(const PolyA& delta, std::int64_t rel, int e = 0);

AbsValue abs_val(const LaurentSeries& x);

struct NearestA {
  PolyA a;
  AbsValue dist;
};
// The element of A closest to z, and |z - a|. Throws InsufficientPrecision
// when the precision does not reach t^0.
NearestA nearest_A(const LaurentSeries& z);
// The distance from z to k_inf = F_q((1/t)).
AbsValue dist_kinf(const LaurentSeries& z);

// Part of z lying in k_inf (F_q components at integral t-powers).
LaurentSeries kinf_part(const LaurentSeries& z);

// "q^(a/b) [(exp, coeff), ...] e=E prec=P".
std::string to_string(const LaurentSeries& x);
LaurentSeries parse_series(FieldRef f, const std::string& s);

}  // namespace dcm

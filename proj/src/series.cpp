#include "drincm/series.hpp"

#include <algorithm>

#include "drincm/errors.hpp"

namespace dcm {
namespace {

constexpr std::int64_t kMaxDense = std::int64_t{1} << 31;

std::int64_t sat_add(std::int64_t a, std::int64_t b) { return std::min(a + b, kNoLimit); }

std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
  if (a >= kNoLimit / std::max<std::int64_t>(b, 1)) return kNoLimit;
  return a * b;
}

void check_compatible(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.field() != b.field()) throw FieldMismatch("series over different fields");
  if (a.e() != b.e()) throw RamificationMismatch("series with e = " + std::to_string(a.e()) + " and e = " +
                                                 std::to_string(b.e()));
}

// Inverse of the unit u (u[0] != 0) modulo s^n, by Newton iteration.
std::vector<Elem> inv_low(const Field& f, const std::vector<Elem>& u, std::size_t n) {
  std::vector<Elem> y{f.inv(u[0])};
  std::size_t len = 1;
  while (len < n) {
    const std::size_t len2 = std::min(2 * len, n);
    std::vector<Elem> e = mul_low(f, u.data(), std::min(u.size(), len2), y.data(), y.size(), len2);
    for (Elem& c : e) c = f.neg(c);
    e[0] = f.add(e[0], f.from_int(2));
    y = mul_low(f, y.data(), y.size(), e.data(), e.size(), len2);
    len = len2;
  }
  y.resize(n, 0);
  return y;
}

}  // namespace

std::string AbsValue::to_string() const {
  if (zero_) return "q^(-inf)";
  return "q^(" + dcm::to_string(log_q()) + ")";
}

void LaurentSeries::normalize() {
  if (e_ != 1 && e_ != 2) throw PreconditionViolated("ramification index must be 1 or 2");
  const std::int64_t room = prec_ - i0_;
  if (room <= 0) c_.clear();
  else if (static_cast<std::int64_t>(c_.size()) > room) c_.resize(static_cast<std::size_t>(room));
  auto lead = std::find_if(c_.begin(), c_.end(), [](Elem c) { return c != 0; });
  if (lead == c_.end()) {
    zero_ = true;
    i0_ = 0;
    c_.clear();
    return;
  }
  i0_ += lead - c_.begin();
  c_.erase(c_.begin(), lead);
  zero_ = false;
  if (prec_ - i0_ > kMaxDense) throw PreconditionViolated("series precision is unbounded");
  c_.resize(static_cast<std::size_t>(prec_ - i0_), 0);
}

LaurentSeries LaurentSeries::zero(FieldRef f, int e, std::int64_t prec) {
  LaurentSeries r;
  r.f_ = f;
  r.e_ = e;
  r.prec_ = prec;
  return r;
}

LaurentSeries LaurentSeries::from_coeffs(FieldRef f, int e, std::int64_t i0, Coeffs c, std::int64_t prec) {
  LaurentSeries r;
  r.f_ = f;
  r.e_ = e;
  r.i0_ = i0;
  r.prec_ = prec;
  r.c_ = std::move(c);
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::constant(FieldRef f, Elem c, int e, std::int64_t prec) {
  return from_coeffs(f, e, 0, Coeffs{c}, prec);
}

LaurentSeries LaurentSeries::monomial(FieldRef f, Elem c, std::int64_t exponent, int e, std::int64_t prec) {
  return from_coeffs(f, e, exponent, Coeffs{c}, prec);
}

LaurentSeries LaurentSeries::t_power(FieldRef f, std::int64_t k, int e, std::int64_t prec) {
  return monomial(f, 1, -e * k, e, prec);
}

LaurentSeries LaurentSeries::from_poly(const PolyA& a, int e, std::int64_t prec) {
  if (a.is_zero()) return zero(a.field(), e, prec);
  const int d = a.deg();
  Coeffs c(static_cast<std::size_t>(e) * d + 1, 0);
  for (int k = 0; k <= d; ++k) c[static_cast<std::size_t>(e) * (d - k)] = a[k];
  return from_coeffs(a.field(), e, -static_cast<std::int64_t>(e) * d, std::move(c), prec);
}

Elem LaurentSeries::coeff(std::int64_t i) const {
  if (i >= prec_) throw InsufficientPrecision("coefficient of s^" + std::to_string(i) + " beyond precision " +
                                              std::to_string(prec_));
  if (zero_ || i < i0_) return 0;
  return c_[static_cast<std::size_t>(i - i0_)];
}

LaurentSeries LaurentSeries::truncated(std::int64_t prec) const {
  LaurentSeries r = *this;
  if (prec >= prec_) return r;
  r.prec_ = prec;
  if (!r.zero_) r.normalize();
  return r;
}

LaurentSeries LaurentSeries::truncated_rel(std::int64_t rel) const {
  if (zero_) return *this;
  return truncated(i0_ + rel);
}

LaurentSeries LaurentSeries::with_e(int e) const {
  if (e == e_) return *this;
  if (e_ != 1 || e != 2) throw RamificationMismatch("cannot pass from e = 2 to e = 1");
  if (zero_) return zero(f_, 2, sat_mul(prec_, 2));
  Coeffs c(2 * c_.size(), 0);
  for (std::size_t k = 0; k < c_.size(); ++k) c[2 * k] = c_[k];
  return from_coeffs(f_, 2, 2 * i0_, std::move(c), 2 * prec_);
}

LaurentSeries LaurentSeries::shifted(std::int64_t k) const {
  LaurentSeries r = *this;
  r.prec_ = sat_add(r.prec_, k);
  if (!r.zero_) r.i0_ += k;
  return r;
}

LaurentSeries LaurentSeries::scaled(Elem c) const {
  if (c == 0) return zero(f_, e_, zero_ ? prec_ : kNoLimit);
  LaurentSeries r = *this;
  for (Elem& x : r.c_) x = f_->mul(x, c);
  return r;
}

LaurentSeries LaurentSeries::conj_coeffs() const {
  LaurentSeries r = *this;
  for (Elem& x : r.c_) x = f_->frob(x);
  return r;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (Elem& x : r.c_) x = f_->neg(x);
  return r;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  check_compatible(a, b);
  const std::int64_t P = std::min(a.prec_, b.prec_);
  if (a.zero_) return b.zero_ ? LaurentSeries::zero(a.f_, a.e_, P) : b.truncated(P);
  if (b.zero_) return a.truncated(P);
  const std::int64_t start = std::min(a.i0_, b.i0_);
  if (start >= P) return LaurentSeries::zero(a.f_, a.e_, P);
  LaurentSeries::Coeffs c(static_cast<std::size_t>(P - start), 0);
  const Field& f = *a.f_;
  for (const LaurentSeries* x : {&a, &b}) {
    const std::int64_t top = std::min<std::int64_t>(x->i0_ + static_cast<std::int64_t>(x->c_.size()), P);
    for (std::int64_t i = x->i0_; i < top; ++i) {
      Elem& dst = c[static_cast<std::size_t>(i - start)];
      dst = f.add(dst, x->c_[static_cast<std::size_t>(i - x->i0_)]);
    }
  }
  return LaurentSeries::from_coeffs(a.f_, a.e_, start, std::move(c), P);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  check_compatible(a, b);
  if (a.zero_ || b.zero_) {
    const std::int64_t P = std::min(sat_add(a.prec_, b.valuation()), sat_add(b.prec_, a.valuation()));
    return LaurentSeries::zero(a.f_, a.e_, P);
  }
  const std::size_t rel = std::min(a.c_.size(), b.c_.size());
  auto c = mul_low(*a.f_, a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size(), rel);
  const std::int64_t i0 = a.i0_ + b.i0_;
  return LaurentSeries::from_coeffs(a.f_, a.e_, i0, std::move(c), i0 + static_cast<std::int64_t>(rel));
}

LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * b.inverse(); }

LaurentSeries LaurentSeries::inverse() const {
  if (zero_) throw InvertZeroToPrecision("inverse of a series that is zero to precision " + std::to_string(prec_));
  auto y = inv_low(*f_, c_, c_.size());
  return from_coeffs(f_, e_, -i0_, std::move(y), -i0_ + static_cast<std::int64_t>(c_.size()));
}

LaurentSeries LaurentSeries::frob_pow(int k, std::int64_t max_rel) const {
  std::int64_t Q = 1;
  for (int i = 0; i < k; ++i) Q *= f_->q();
  if (zero_) return zero(f_, e_, prec_ >= 0 ? sat_mul(prec_, Q) : prec_ * Q);
  const std::int64_t rel = std::min(sat_mul(static_cast<std::int64_t>(c_.size()), Q), max_rel);
  Coeffs c(static_cast<std::size_t>(rel), 0);
  const bool conj = k % 2 == 1;
  for (std::size_t j = 0; static_cast<std::int64_t>(j) * Q < rel; ++j)
    c[j * Q] = conj ? f_->frob(c_[j]) : c_[j];
  return from_coeffs(f_, e_, i0_ * Q, std::move(c), i0_ * Q + rel);
}

LaurentSeries LaurentSeries::pow(std::uint64_t n, std::int64_t max_rel) const {
  if (n == 0) return constant(f_, 1, e_, std::max<std::int64_t>(1, std::min(rel_prec(), max_rel)));
  if (zero_) return zero(f_, e_, prec_ >= 0 ? sat_mul(prec_, static_cast<std::int64_t>(n)) : prec_);
  LaurentSeries base = truncated_rel(max_rel);
  LaurentSeries acc;
  bool have = false;
  while (true) {
    if (n & 1) {
      acc = have ? (acc * base).truncated_rel(max_rel) : base;
      have = true;
    }
    n >>= 1;
    if (!n) break;
    base = (base * base).truncated_rel(max_rel);
  }
  return acc;
}

LaurentSeries LaurentSeries::sqrt() const {
  if (zero_) return zero(f_, e_, prec_ >= 0 ? (prec_ + 1) / 2 : prec_ / 2);
  if (i0_ % 2 != 0) throw RamificationMismatch("square root of a series with odd valuation");
  if (!f_->is_square(c_[0])) throw PreconditionViolated("leading coefficient is not a square in F_{q^2}");
  const Field& f = *f_;
  const std::size_t n = c_.size();
  const Elem half = f.inv(f.from_int(2));
  std::vector<Elem> y{f.sqrt(c_[0])};
  std::size_t len = 1;
  while (len < n) {
    const std::size_t len2 = std::min(2 * len, n);
    auto yi = inv_low(f, y, len2);
    auto uy = mul_low(f, c_.data(), std::min(n, len2), yi.data(), yi.size(), len2);
    y.resize(len2, 0);
    for (std::size_t k = 0; k < len2; ++k) y[k] = f.mul(f.add(y[k], uy[k]), half);
    len = len2;
  }
  return from_coeffs(f_, e_, i0_ / 2, std::move(y), i0_ / 2 + static_cast<std::int64_t>(n));
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.f_ != b.f_ || a.e_ != b.e_ || a.zero_ != b.zero_ || a.prec_ != b.prec_) return false;
  return a.zero_ || (a.i0_ == b.i0_ && a.c_ == b.c_);
}

LaurentSeries sqrt_poly(const PolyA& delta, std::int64_t rel, int e) {
  if (delta.is_zero()) throw ZeroPolynomial("square root of the zero polynomial");
  const int d = delta.deg();
  if (e == 0) e = d % 2 ? 2 : 1;
  if (e == 1 && d % 2) throw RamificationMismatch("odd degree needs e = 2");
  const std::int64_t i0 = -static_cast<std::int64_t>(e) * d;
  return LaurentSeries::from_poly(delta, e, i0 + rel).sqrt();
}

AbsValue abs_val(const LaurentSeries& x) { return x.abs(); }

LaurentSeries kinf_part(const LaurentSeries& z) {
  if (z.is_zero()) return z;
  const Field& f = *z.field();
  LaurentSeries::Coeffs c = z.coeffs();
  const std::int64_t i0 = z.valuation();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const std::int64_t i = i0 + static_cast<std::int64_t>(k);
    c[k] = (i % z.e() == 0) ? f.comp0(c[k]) : Elem{0};
  }
  return LaurentSeries::from_coeffs(z.field(), z.e(), i0, std::move(c), z.prec());
}

AbsValue dist_kinf(const LaurentSeries& z) { return (z - kinf_part(z)).abs(); }

NearestA nearest_A(const LaurentSeries& z) {
  if (z.prec() <= 0)
    throw InsufficientPrecision("nearest element of A needs precision past s^0, have " + std::to_string(z.prec()));
  FieldRef F = z.field();
  NearestA out{PolyA(F), AbsValue::zero()};
  if (z.is_zero()) return out;
  const int e = z.e();
  for (std::int64_t i = z.valuation(); i <= 0; ++i) {
    if (i % e) continue;
    const Elem c = F->comp0(z.coeff(i));
    if (c) out.a += PolyA::monomial(F, c, static_cast<int>(-i / e));
  }
  out.dist = (z - LaurentSeries::from_poly(out.a, e, z.prec())).abs();
  return out;
}

std::string to_string(const LaurentSeries& x) {
  std::string out = x.abs().to_string() + " [";
  bool first = true;
  if (!x.is_zero()) {
    const std::int64_t i0 = x.valuation();
    const auto& c = x.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      if (!first) out += ", ";
      first = false;
      out += "(" + std::to_string(i0 + static_cast<std::int64_t>(k)) + ", " + x.field()->format(c[k]) + ")";
    }
  }
  out += "] e=" + std::to_string(x.e()) + " prec=" + std::to_string(x.prec());
  return out;
}

}  // namespace dcm

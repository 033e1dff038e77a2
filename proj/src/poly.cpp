#include "drincm/poly.hpp"

#include <algorithm>

#include "drincm/errors.hpp"
#include "drincm/text.hpp"

namespace dcm {

PolyA PolyA::constant(FieldRef f, Elem c) {
  PolyA r(f);
  if (c != 0) r.c_.push_back(c);
  return r;
}

PolyA PolyA::monomial(FieldRef f, Elem c, int k) {
  PolyA r(f);
  if (c == 0) return r;
  r.c_.assign(k + 1, 0);
  r.c_[k] = c;
  return r;
}

PolyA PolyA::decode(FieldRef f, std::uint64_t code) {
  PolyA r(f);
  const auto q = static_cast<std::uint64_t>(f->q());
  while (code) {
    r.c_.push_back(static_cast<Elem>(code % q));
    code /= q;
  }
  r.trim();
  return r;
}

std::uint64_t PolyA::encode() const {
  std::uint64_t code = 0;
  const auto q = static_cast<std::uint64_t>(f_ ? f_->q() : 1);
  for (int i = deg(); i >= 0; --i) code = code * q + c_[i];
  return code;
}

PolyA PolyA::operator-() const {
  PolyA r = *this;
  for (Elem& c : r.c_) c = f_->neg(c);
  return r;
}

PolyA& PolyA::operator+=(const PolyA& o) {
  if (!f_) f_ = o.f_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = f_->add(c_[i], o.c_[i]);
  trim();
  return *this;
}

PolyA& PolyA::operator-=(const PolyA& o) {
  if (!f_) f_ = o.f_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = f_->sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

PolyA operator*(const PolyA& a, const PolyA& b) {
  FieldRef f = a.f_ ? a.f_ : b.f_;
  PolyA r(f);
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      r.c_[i + j] = f->add(r.c_[i + j], f->mul(a.c_[i], b.c_[j]));
  }
  r.trim();
  return r;
}

PolyA PolyA::scaled(Elem c) const {
  PolyA r(f_);
  if (c == 0) return r;
  r.c_ = c_;
  for (Elem& x : r.c_) x = f_->mul(x, c);
  return r;
}

PolyA PolyA::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(f_->inv(lc()));
}

namespace {

// c(t) -> c(t + beta) on c[lo, lo + n), in place. Blocks of size m = p^k
// shift through (t + beta)^m = t^m + beta^m.
void taylor_shift(const Field& F, PolyA::Coeffs& c, std::size_t lo, std::size_t n, Elem beta) {
  const std::size_t p = static_cast<std::size_t>(F.p());
  if (n <= p) {
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t k = lo + n - 2; k + 1 > lo + i; --k) c[k] = F.add(c[k], F.mul(beta, c[k + 1]));
    return;
  }
  std::size_t m = 1;
  while (m * p < n) m *= p;
  const std::size_t blocks = (n + m - 1) / m;
  for (std::size_t j = 0; j < blocks; ++j) taylor_shift(F, c, lo + j * m, std::min(m, n - j * m), beta);
  Elem bm = beta;
  for (std::size_t s = 1; s < m; s *= p) bm = F.pow(bm, p);
  // Horner over blocks: r = r * (t^m + bm) + f_j.
  std::vector<Elem> r(c.begin() + static_cast<std::ptrdiff_t>(lo + (blocks - 1) * m),
                      c.begin() + static_cast<std::ptrdiff_t>(lo + n));
  for (std::size_t j = blocks - 1; j-- > 0;) {
    std::vector<Elem> next(r.size() + m, 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      next[i + m] = F.add(next[i + m], r[i]);
      next[i] = F.add(next[i], F.mul(bm, r[i]));
    }
    for (std::size_t i = 0; i < m; ++i) next[i] = F.add(next[i], c[lo + j * m + i]);
    r = std::move(next);
  }
  for (std::size_t i = 0; i < n; ++i) c[lo + i] = i < r.size() ? r[i] : Elem{0};
}

}  // namespace

PolyA PolyA::compose_affine(Elem alpha, Elem beta) const {
  if (c_.empty()) return *this;
  Coeffs c = c_;
  if (beta != 0) taylor_shift(*f_, c, 0, c.size(), beta);
  Elem a = 1;
  for (Elem& x : c) {
    x = f_->mul(x, a);
    a = f_->mul(a, alpha);
  }
  return PolyA(f_, std::move(c));
}

PolyA PolyA::derivative() const {
  PolyA r(f_);
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = f_->mul(f_->from_int(static_cast<long long>(i)), c_[i]);
  r.trim();
  return r;
}

Elem PolyA::eval(Elem x) const {
  Elem acc = 0;
  for (int i = deg(); i >= 0; --i) acc = f_->add(f_->mul(acc, x), c_[i]);
  return acc;
}

std::strong_ordering operator<=>(const PolyA& a, const PolyA& b) {
  if (auto c = a.deg() <=> b.deg(); c != 0) return c;
  for (int i = a.deg(); i >= 0; --i)
    if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

DivRem divrem(const PolyA& f, const PolyA& g) {
  if (g.is_zero()) throw DivisionByZeroPoly("division by the zero polynomial");
  FieldRef F = f.field() ? f.field() : g.field();
  if (f.deg() < g.deg()) return {PolyA(F), f};
  PolyA::Coeffs rem = f.coeffs();
  PolyA::Coeffs quot(f.deg() - g.deg() + 1, 0);
  const Elem inv_lc = F->inv(g.lc());
  const int dg = g.deg();
  for (int k = f.deg(); k >= dg; --k) {
    Elem c = F->mul(rem[k], inv_lc);
    if (c == 0) continue;
    quot[k - dg] = c;
    for (int i = 0; i <= dg; ++i) rem[k - dg + i] = F->sub(rem[k - dg + i], F->mul(c, g[i]));
  }
  rem.resize(dg);
  return {PolyA(F, std::move(quot)), PolyA(F, std::move(rem))};
}

PolyA operator%(const PolyA& f, const PolyA& g) { return divrem(f, g).rem; }

PolyA exact_div(const PolyA& f, const PolyA& g) {
  auto [qt, r] = divrem(f, g);
  if (!r.is_zero()) throw NotDividing(to_string(g) + " does not divide " + to_string(f));
  return qt;
}

bool divides(const PolyA& g, const PolyA& f) {
  if (g.is_zero()) return f.is_zero();
  return (f % g).is_zero();
}

PolyA gcd(const PolyA& a, const PolyA& b) {
  PolyA x = a, y = b;
  while (!y.is_zero()) {
    PolyA r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

PolyA gcd3(const PolyA& a, const PolyA& b, const PolyA& c) { return gcd(gcd(a, b), c); }

PolyA pow(PolyA base, unsigned k) {
  PolyA r = PolyA::constant(base.field(), 1);
  while (k) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

PolyA powmod(PolyA base, std::uint64_t k, const PolyA& m) {
  PolyA r = PolyA::constant(base.field(), 1) % m;
  base = base % m;
  while (k) {
    if (k & 1) r = (r * base) % m;
    k >>= 1;
    if (k) base = (base * base) % m;
  }
  return r;
}

int valuation(const PolyA& f, const PolyA& v) {
  if (f.is_zero()) throw ZeroPolynomial("valuation of zero");
  int k = 0;
  PolyA g = f;
  while (true) {
    auto [qt, r] = divrem(g, v);
    if (!r.is_zero()) return k;
    g = std::move(qt);
    ++k;
  }
}

std::string to_string(const PolyA& f) {
  if (f.is_zero()) return "0";
  const Field& F = *f.field();
  std::string out;
  for (int i = f.deg(); i >= 0; --i) {
    Elem c = f[i];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    std::string cs = F.format(c);
    if (i == 0) {
      out += cs.find('+') == std::string::npos ? cs : "(" + cs + ")";
      continue;
    }
    if (c != 1) out += (cs.find('+') == std::string::npos ? cs : "(" + cs + ")") + "*";
    out += i == 1 ? "t" : "t^" + std::to_string(i);
  }
  return out;
}

PolyA parse_poly(FieldRef f, const std::string& s) {
  PolyA acc(f);
  for (auto& [mono, c] : text::parse(s, f->p())) {
    if (mono[1] != 0) throw ParseError("coefficients of A = F_q[t] must lie in F_q: '" + s + "'");
    Elem coef = f->mul(f->from_int(c), f->pow(f->gen_x(), mono[0]));
    acc += PolyA::monomial(f, coef, mono[2]);
  }
  return acc;
}

}  // namespace dcm

#include "drincm/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "drincm/errors.hpp"
#include "drincm/text.hpp"

namespace dcm {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

constexpr int kMaxQ2 = 1024;

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Normalizes an F_p polynomial: reduce coefficients, strip leading zeros.
std::vector<int> normalize_fp(std::vector<int> v, int p) {
  for (int& c : v) c = ((c % p) + p) % p;
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

// Reduces an F_p polynomial (constant first) modulo the monic-normalized m,
// returning n = deg m coordinates.
std::vector<int> reduce_fp(std::vector<int> a, const std::vector<int>& m, int p) {
  const int n = static_cast<int>(m.size()) - 1;
  int inv_lc = 1;
  while ((inv_lc * m.back()) % p != 1) ++inv_lc;
  for (int k = static_cast<int>(a.size()) - 1; k >= n; --k) {
    int c = (a[k] * inv_lc) % p;
    if (c == 0) continue;
    for (int i = 0; i <= n; ++i) a[k - n + i] = ((a[k - n + i] - c * m[i]) % p + p) % p;
  }
  a.resize(n, 0);
  return a;
}

using Key = std::tuple<int, int, std::vector<int>, std::vector<Elem>>;

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<Key, std::unique_ptr<Field>>& registry() {
  static std::map<Key, std::unique_ptr<Field>> r;
  return r;
}

}  // namespace

Field::Field(int p, int n, std::vector<int> mod_q, std::vector<Elem> mod_q2)
    : p_(p), n_(n), q_(ipow(p, n)), q2_(q_ * q_), mod_q_(std::move(mod_q)), mod_q2_(std::move(mod_q2)) {}

FieldRef Field::make(int p, int n, const std::vector<int>& modulus_q, const std::vector<Elem>& modulus_q2) {
  if (p == 2 || !is_prime(p)) throw CompositeP("p = " + std::to_string(p) + " is not an odd prime");
  if (n < 1) throw ReducibleModulus("extension degree must be >= 1");
  const int q = ipow(p, n);
  if (q * q > kMaxQ2) throw FieldTooLarge("q^2 = " + std::to_string(q * q) + " exceeds " + std::to_string(kMaxQ2));
  std::vector<int> mq = normalize_fp(modulus_q, p);
  if (n == 1 && mq.empty()) mq = {0, 1};
  if (static_cast<int>(mq.size()) != n + 1)
    throw ReducibleModulus("modulus_q must have degree " + std::to_string(n));
  std::vector<Elem> mq2 = modulus_q2;
  while (!mq2.empty() && mq2.back() == 0) mq2.pop_back();
  if (mq2.size() != 3) throw ReducibleModulus("modulus_q2 must have degree 2");
  for (Elem c : mq2)
    if (c >= q) throw ReducibleModulus("modulus_q2 coefficients must lie in F_q");

  Key key{p, n, mq, mq2};
  std::lock_guard lock(registry_mutex());
  auto& reg = registry();
  if (auto it = reg.find(key); it != reg.end()) return it->second.get();
  std::unique_ptr<Field> f(new Field(p, n, mq, mq2));
  f->build();
  FieldRef out = f.get();
  reg.emplace(std::move(key), std::move(f));
  return out;
}

FieldRef Field::make(int p, int n, const std::string& modulus_q, const std::string& modulus_q2) {
  if (p == 2 || !is_prime(p)) throw CompositeP("p = " + std::to_string(p) + " is not an odd prime");
  std::vector<int> mq;
  if (!(n == 1 && modulus_q.empty())) {
    for (auto& [mono, c] : text::parse(modulus_q, p)) {
      if (mono[1] != 0 || mono[2] != 0) throw ParseError("modulus_q must be a polynomial in x");
      if (static_cast<int>(mq.size()) <= mono[0]) mq.resize(mono[0] + 1, 0);
      mq[mono[0]] = static_cast<int>(c);
    }
  }
  mq = normalize_fp(mq, p);
  if (n == 1 && mq.empty()) mq = {0, 1};
  if (static_cast<int>(mq.size()) != n + 1) throw ReducibleModulus("modulus_q must have degree " + std::to_string(n));
  // Coefficients of modulus_q2 are x-polynomials reduced into F_q.
  std::map<int, std::vector<int>> ycoef;
  for (auto& [mono, c] : text::parse(modulus_q2, p)) {
    if (mono[2] != 0) throw ParseError("modulus_q2 must be a polynomial in y over F_q");
    auto& v = ycoef[mono[1]];
    if (static_cast<int>(v.size()) <= mono[0]) v.resize(mono[0] + 1, 0);
    v[mono[0]] = static_cast<int>(c);
  }
  std::vector<Elem> mq2;
  for (auto& [deg, xpoly] : ycoef) {
    std::vector<int> red = reduce_fp(xpoly, mq, p);
    int idx = 0;
    for (int k = n - 1; k >= 0; --k) idx = idx * p + red[k];
    if (static_cast<int>(mq2.size()) <= deg) mq2.resize(deg + 1, 0);
    mq2[deg] = static_cast<Elem>(idx);
  }
  return make(p, n, mq, mq2);
}

void Field::build() {
  const int q = q_, Q = q2_, p = p_, n = n_;
  // F_q tables from coordinate arithmetic modulo mod_q.
  auto fq_coords = [&](int i) {
    std::vector<int> c(n);
    for (int k = 0; k < n; ++k, i /= p) c[k] = i % p;
    return c;
  };
  auto fq_index = [&](const std::vector<int>& c) {
    int idx = 0;
    for (int k = n - 1; k >= 0; --k) idx = idx * p + c[k];
    return idx;
  };
  std::vector<int> fadd(q * q), fmul(q * q);
  for (int a = 0; a < q; ++a) {
    auto ca = fq_coords(a);
    for (int b = 0; b < q; ++b) {
      auto cb = fq_coords(b);
      std::vector<int> s(n), prod(2 * n - 1, 0);
      for (int k = 0; k < n; ++k) s[k] = (ca[k] + cb[k]) % p;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      fadd[a * q + b] = fq_index(s);
      fmul[a * q + b] = fq_index(reduce_fp(prod, mod_q_, p));
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (fmul[a * q + b] == 0) throw ReducibleModulus("modulus_q is reducible over F_p");

  // Monic-normalize the quadratic modulus: y^2 + b1 y + b0.
  int inv_lc = 1;
  while (fmul[mod_q2_[2] * q + inv_lc] != 1) ++inv_lc;
  const int b1 = fmul[mod_q2_[1] * q + inv_lc], b0 = fmul[mod_q2_[0] * q + inv_lc];
  auto fneg = [&](int a) {
    for (int b = 0; b < q; ++b)
      if (fadd[a * q + b] == 0) return b;
    return 0;
  };
  const int nb1 = fneg(b1), nb0 = fneg(b0);

  add_.assign(Q * Q, 0);
  mul_.assign(Q * Q, 0);
  neg_.assign(Q, 0);
  for (int a = 0; a < Q; ++a) {
    const int a0 = a % q, a1 = a / q;
    for (int b = 0; b < Q; ++b) {
      const int c0 = b % q, c1 = b / q;
      add_[a * Q + b] = static_cast<Elem>(fadd[a0 * q + c0] + q * fadd[a1 * q + c1]);
      // (a0 + a1 y)(c0 + c1 y) with y^2 = -b1 y - b0
      const int hh = fmul[a1 * q + c1];
      const int r0 = fadd[fmul[a0 * q + c0] * q + fmul[hh * q + nb0]];
      const int r1 = fadd[fadd[fmul[a0 * q + c1] * q + fmul[a1 * q + c0]] * q + fmul[hh * q + nb1]];
      mul_[a * Q + b] = static_cast<Elem>(r0 + q * r1);
    }
  }
  for (int a = 0; a < Q; ++a)
    for (int b = 0; b < Q; ++b)
      if (add_[a * Q + b] == 0) neg_[a] = static_cast<Elem>(b);
  inv_.assign(Q, 0);
  for (int a = 1; a < Q; ++a) {
    for (int b = 1; b < Q; ++b)
      if (mul_[a * Q + b] == 1) inv_[a] = static_cast<Elem>(b);
    if (inv_[a] == 0) throw ReducibleModulus("modulus_q2 is reducible over F_q");
  }
  frob_.assign(Q, 0);
  for (int a = 0; a < Q; ++a) frob_[a] = pow(static_cast<Elem>(a), static_cast<std::uint64_t>(q));

  sqrt_.assign(Q, kNoRoot);
  for (int s = 0; s < Q; ++s) {
    Elem sq = mul(static_cast<Elem>(s), static_cast<Elem>(s));
    if (sqrt_[sq] == kNoRoot || coords(static_cast<Elem>(s)) < coords(sqrt_[sq])) sqrt_[sq] = static_cast<Elem>(s);
  }

  std::vector<int> xc(1 + 1, 0);
  xc[1] = 1;
  x_ = static_cast<Elem>(fq_index(reduce_fp(xc, mod_q_, p)));
  for (Elem a = 1; a < q; ++a)
    if (!is_square_fq(a)) {
      nonsquare_ = a;
      break;
    }
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw ZeroArgument("inverse of zero");
  return inv_[a];
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  Elem r = 1, b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

Elem Field::from_int(long long v) const {
  long long r = ((v % p_) + p_) % p_;
  return static_cast<Elem>(r);
}

std::vector<int> Field::coords(Elem a) const {
  std::vector<int> c(2 * n_);
  int lo = a % q_, hi = a / q_;
  for (int k = 0; k < n_; ++k, lo /= p_) c[k] = lo % p_;
  for (int k = 0; k < n_; ++k, hi /= p_) c[n_ + k] = hi % p_;
  return c;
}

Elem Field::from_coords(const std::vector<int>& c) const {
  int lo = 0, hi = 0;
  for (int k = n_ - 1; k >= 0; --k) {
    lo = lo * p_ + ((c.at(k) % p_) + p_) % p_;
    hi = hi * p_ + ((c.at(n_ + k) % p_) + p_) % p_;
  }
  return static_cast<Elem>(lo + q_ * hi);
}

bool Field::is_square_fq(Elem a) const {
  if (a == 0) throw ZeroArgument("is_square_fq(0)");
  if (!in_fq(a)) throw FieldMismatch("is_square_fq expects an F_q element");
  return pow(a, static_cast<std::uint64_t>((q_ - 1) / 2)) == 1;
}

Elem Field::sqrt_fq2(Elem a) const {
  if (!in_fq(a)) throw FieldMismatch("sqrt_fq2 expects an F_q element");
  return sqrt_[a];
}

Elem Field::sqrt(Elem a) const {
  if (sqrt_[a] == kNoRoot) throw ZeroArgument("element is not a square in F_{q^2}");
  return sqrt_[a];
}

namespace {

std::string format_fq(const Field& f, int idx) {
  if (f.n() == 1) return std::to_string(idx);
  std::string out;
  std::vector<int> c(f.n());
  for (int k = 0; k < f.n(); ++k, idx /= f.p()) c[k] = idx % f.p();
  for (int k = f.n() - 1; k >= 0; --k) {
    if (c[k] == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += std::to_string(c[k]);
    } else {
      if (c[k] != 1) out += std::to_string(c[k]) + "*";
      out += k == 1 ? "x" : "x^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string Field::format(Elem a) const {
  const int c0 = comp0(a), c1 = comp1(a);
  if (c1 == 0) return format_fq(*this, c0);
  std::string out;
  std::string s1 = format_fq(*this, c1);
  if (c1 == 1)
    out = "y";
  else if (s1.find('+') == std::string::npos)
    out = s1 + "*y";
  else
    out = "(" + s1 + ")*y";
  if (c0 != 0) out += "+" + format_fq(*this, c0);
  return out;
}

Elem Field::parse(const std::string& s) const {
  Elem acc = 0;
  for (auto& [mono, c] : text::parse(s, p_)) {
    if (mono[2] != 0) throw ParseError("field element must not contain t: '" + s + "'");
    Elem term = mul(from_int(c), mul(pow(gen_x(), mono[0]), pow(gen_y(), mono[1])));
    acc = add(acc, term);
  }
  return acc;
}

}  // namespace dcm

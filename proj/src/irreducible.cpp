#include "drincm/irreducible.hpp"

#include <map>
#include <mutex>

#include "drincm/errors.hpp"

namespace dcm {
namespace {

int mobius(int n) {
  int m = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    m = -m;
  }
  return n > 1 ? -m : m;
}

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

struct IrrCache {
  std::mutex mu;
  // Per-degree lists; map nodes are stable, and each list is immutable once
  // inserted, so references handed out stay valid.
  std::map<std::pair<FieldRef, int>, std::vector<PolyA>> by_degree;
};

IrrCache& cache() {
  static IrrCache c;
  return c;
}

std::uint64_t span_of(FieldRef f, int d) { return upow(static_cast<std::uint64_t>(f->q()), d); }

}  // namespace

std::vector<PolyA> monic_polys(FieldRef f, int d) {
  std::vector<PolyA> out;
  if (d < 0) return out;
  const std::uint64_t span = span_of(f, d);
  out.reserve(span);
  for (std::uint64_t c = 0; c < span; ++c) out.push_back(PolyA::decode(f, c + span));
  return out;
}

const std::vector<PolyA>& irreducibles_of_degree(FieldRef f, int d) {
  auto& c = cache();
  {
    std::lock_guard lock(c.mu);
    if (auto it = c.by_degree.find({f, d}); it != c.by_degree.end()) return it->second;
  }
  // Sieve of monic polynomials of degree d: strike every product v*g with v
  // an irreducible of degree <= d/2 and g monic of the complementary degree.
  const std::uint64_t span = span_of(f, d);
  std::vector<bool> reducible(span, false);
  for (int k = 1; 2 * k <= d; ++k)
    for (const PolyA& v : irreducibles_of_degree(f, k))
      for (const PolyA& g : monic_polys(f, d - k)) reducible[(v * g).encode() - span] = true;
  std::vector<PolyA> out;
  for (std::uint64_t code = 0; code < span; ++code)
    if (!reducible[code]) out.push_back(PolyA::decode(f, code + span));
  std::lock_guard lock(c.mu);
  return c.by_degree.emplace(std::make_pair(f, d), std::move(out)).first->second;
}

std::vector<PolyA> monic_irreducibles(FieldRef f, int max_deg) {
  std::vector<PolyA> out;
  for (int d = 1; d <= max_deg; ++d) {
    const auto& list = irreducibles_of_degree(f, d);
    out.insert(out.end(), list.begin(), list.end());
  }
  return out;
}

std::uint64_t count_irreducibles(int q, int i) {
  long long total = 0;
  for (int d = 1; d <= i; ++d)
    if (i % d == 0) total += mobius(d) * static_cast<long long>(upow(q, i / d));
  return static_cast<std::uint64_t>(total / i);
}

bool is_irreducible(const PolyA& f) {
  if (f.deg() < 1) return false;
  for (int k = 1; 2 * k <= f.deg(); ++k)
    for (const PolyA& v : irreducibles_of_degree(f.field(), k))
      if (divides(v, f)) return false;
  return true;
}

bool is_squarefree(const PolyA& f) {
  if (f.is_zero()) return false;
  if (f.deg() == 0) return true;
  PolyA d = f.derivative();
  if (d.is_zero()) return false;
  return gcd(f, d).is_one();
}

PolyA Factorization::expand(FieldRef f) const {
  PolyA r = PolyA::constant(f, unit);
  for (auto& [v, e] : factors) r *= pow(v, static_cast<unsigned>(e));
  return r;
}

Factorization factor(const PolyA& f) {
  if (f.is_zero()) throw ZeroPolynomial("factor(0)");
  Factorization out;
  out.unit = f.lc();
  PolyA rest = f.monic();
  for (int k = 1; 2 * k <= rest.deg(); ++k) {
    for (const PolyA& v : irreducibles_of_degree(f.field(), k)) {
      if (2 * k > rest.deg()) break;
      int e = 0;
      while (true) {
        auto [qt, r] = divrem(rest, v);
        if (!r.is_zero()) break;
        rest = std::move(qt);
        ++e;
      }
      if (e) out.factors.emplace_back(v, e);
    }
  }
  if (rest.deg() >= 1) {
    // The cofactor has no factor of degree <= deg/2, so it is irreducible.
    auto it = out.factors.begin();
    while (it != out.factors.end() && it->first < rest) ++it;
    out.factors.insert(it, {rest, 1});
  }
  return out;
}

SquarefreeSplit squarefree_decompose(const PolyA& f) {
  Factorization fac = factor(f);
  FieldRef F = f.field();
  SquarefreeSplit s{PolyA::constant(F, fac.unit), PolyA::constant(F, 1)};
  for (auto& [v, e] : fac.factors) {
    if (e % 2) s.delta0 *= v;
    s.g *= pow(v, static_cast<unsigned>(e / 2));
  }
  return s;
}

}  // namespace dcm

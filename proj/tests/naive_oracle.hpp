// Independent reference computations for prime fields F_p, using plain
// integer coefficient vectors instead of the library's field tables.
#pragma once

#include <cstdint>
#include <vector>

namespace oracle {

using Poly = std::vector<int>;  // constant term first, no trailing zeros

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly from_code(std::uint64_t code, int p) {
  Poly a;
  for (; code; code /= p) a.push_back(static_cast<int>(code % p));
  return a;
}

inline std::uint64_t to_code(const Poly& a, int p) {
  std::uint64_t c = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) c = c * p + *it;
  return c;
}

inline int inv_mod(int a, int p) {
  int r = 1;
  for (int e = p - 2; e > 0; --e) r = r * a % p;
  return r;
}

inline Poly mod(Poly a, const Poly& b, int p) {
  const int db = static_cast<int>(b.size()) - 1;
  const int il = inv_mod(b.back(), p);
  for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
    const int c = a[k] * il % p;
    if (!c) continue;
    for (int i = 0; i <= db; ++i) a[k - db + i] = ((a[k - db + i] - c * b[i]) % p + p) % p;
  }
  a.resize(std::min<std::size_t>(a.size(), static_cast<std::size_t>(db)));
  trim(a);
  return a;
}

inline Poly gcd(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Order-independent fingerprint term of one triple, from the base-p codes
// of its coefficients.
inline std::uint64_t triple_hash(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(a ^ mix64(b ^ mix64(c)));
}

struct Census {
  std::vector<int> counts;
  std::vector<std::uint64_t> sums;  // sum of triple_hash mod 2^64
};

// For every delta of exact degree D (indexed by its code), the triples
// (a, b, c) with a monic, deg b < deg a <= deg c = D - deg a,
// b^2 - 4ac = delta and gcd(a, b, c) = 1, by running over all such triples.
// c runs as an odometer so that delta and its code update incrementally.
inline Census triple_census(int p, int D) {
  std::uint64_t span = 1;
  for (int i = 0; i <= D; ++i) span *= p;
  Census out{std::vector<int>(span, 0), std::vector<std::uint64_t>(span, 0)};
  auto& counts = out.counts;
  auto& sums = out.sums;
  const int four = 4 % p;
  std::vector<std::uint64_t> pw(D + 2, 1);
  for (int i = 1; i <= D + 1; ++i) pw[i] = pw[i - 1] * p;
  std::uint64_t qk = 1;
  for (int k = 0; 2 * k <= D; ++k, qk *= p) {
    const int dc = D - k;
    for (std::uint64_t ac = 0; ac < qk; ++ac) {
      const Poly a = from_code(ac + qk, p);
      for (std::uint64_t bc = 0; bc < qk; ++bc) {
        const Poly b = from_code(bc, p);
        const Poly g = gcd(a, b, p);
        const bool coprime = g.size() == 1;
        // delta for c = t^dc (the first c of exact degree dc).
        std::vector<int> d(D + 1, 0);
        for (std::size_t i = 0; i < b.size(); ++i)
          for (std::size_t j = 0; j < b.size(); ++j) d[i + j] = (d[i + j] + b[i] * b[j]) % p;
        for (std::size_t i = 0; i < a.size(); ++i) d[i + dc] = ((d[i + dc] - four * a[i]) % p + p) % p;
        std::uint64_t code = 0;
        for (int i = D; i >= 0; --i) code = code * p + d[i];
        std::vector<int> c(dc + 1, 0);
        c[dc] = 1;
        std::uint64_t ccode = pw[dc];
        // delta -= s * 4a t^i.
        auto shift = [&](int i, int s) {
          for (std::size_t j = 0; j < a.size(); ++j) {
            const int idx = i + static_cast<int>(j);
            const int nv = ((d[idx] - s * four * a[j]) % p + p) % p;
            code = code + pw[idx] * nv - pw[idx] * d[idx];
            d[idx] = nv;
          }
        };
        for (bool done = false; !done;) {
          bool keep = coprime;
          if (!keep) {
            Poly cp(c.begin(), c.end());
            trim(cp);
            keep = gcd(g, cp, p).size() == 1;
          }
          if (keep) {
            ++counts[code];
            sums[code] += triple_hash(ac + qk, bc, ccode);
          }
          // Next c in code order; the leading digit runs over 1..p-1.
          for (int i = 0;; ++i) {
            if (c[i] < p - 1) {
              ++c[i];
              ccode += pw[i];
              shift(i, 1);
              break;
            }
            if (i == dc) {
              done = true;
              break;
            }
            shift(i, -c[i]);
            ccode -= pw[i] * c[i];
            c[i] = 0;
          }
        }
      }
    }
  }
  return out;
}

inline std::vector<int> triple_counts(int p, int D) { return triple_census(p, D).counts; }

}  // namespace oracle

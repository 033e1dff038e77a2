// Truncated products of coefficient arrays over F_{q^2}.
//
// Large products go through Kronecker substitution: each F_{q^2} element is
// written in F_p-coordinates of x^i y^j, packed into bit fields of a big
// integer, multiplied with GMP and unpacked. Slot (k, j, i) sits at field
// k*S + j*(2n-1) + i with S = 3*(2n-1), so sums of indices never collide.
// When both inputs lie in F_q the y-part is dropped and S = 2n-1.

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "drincm/series.hpp"

namespace dcm {
namespace {

constexpr std::size_t kKroneckerThreshold = 24;

struct KroneckerTables {
  int p = 0;
  int xspan = 0;   // 2n - 1
  int stride = 0;  // 3 * xspan
  // Input packing: for each element, its 2n coordinates (x-part of y^0, then y^1).
  std::vector<std::uint8_t> coords;
  // scaled[(j*xspan + i) * p + v] = v * x^i y^j
  std::vector<Elem> scaled;
};

std::unique_ptr<KroneckerTables> build_tables(const Field& f) {
  auto t = std::make_unique<KroneckerTables>();
  const int n = f.n(), p = f.p();
  t->p = p;
  t->xspan = 2 * n - 1;
  t->stride = 3 * t->xspan;
  t->coords.resize(static_cast<std::size_t>(f.q2()) * 2 * n);
  for (int a = 0; a < f.q2(); ++a) {
    auto c = f.coords(static_cast<Elem>(a));
    for (int k = 0; k < 2 * n; ++k) t->coords[a * 2 * n + k] = static_cast<std::uint8_t>(c[k]);
  }
  t->scaled.resize(static_cast<std::size_t>(3) * t->xspan * p);
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < t->xspan; ++i) {
      Elem mono = f.mul(f.pow(f.gen_y(), j), f.pow(f.gen_x(), i));
      for (int v = 0; v < p; ++v) t->scaled[(j * t->xspan + i) * p + v] = f.mul(f.from_int(v), mono);
    }
  }
  return t;
}

const KroneckerTables& tables_for(const Field& f) {
  static std::mutex mu;
  static std::map<FieldRef, std::unique_ptr<KroneckerTables>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[&f];
  if (!slot) slot = build_tables(f);
  return *slot;
}

// Bit-level slot packing into 64-bit limbs.
class BitPack {
 public:
  BitPack(std::size_t slots, int bits) : bits_(bits), limbs_((slots * bits + 63) / 64 + 1, 0) {}
  void put(std::size_t slot, std::uint64_t v) {
    const std::size_t pos = slot * bits_;
    const std::size_t w = pos >> 6;
    const int off = static_cast<int>(pos & 63);
    limbs_[w] |= v << off;
    if (off + bits_ > 64) limbs_[w + 1] |= v >> (64 - off);
  }
  std::vector<std::uint64_t>& limbs() { return limbs_; }

 private:
  int bits_;
  std::vector<std::uint64_t> limbs_;
};

std::uint64_t get_bits(const std::vector<std::uint64_t>& limbs, std::size_t slot, int bits) {
  const std::size_t pos = slot * bits;
  const std::size_t w = pos >> 6;
  const int off = static_cast<int>(pos & 63);
  if (w >= limbs.size()) return 0;
  std::uint64_t v = limbs[w] >> off;
  if (off + bits > 64 && w + 1 < limbs.size()) v |= limbs[w + 1] << (64 - off);
  return bits == 64 ? v : v & ((std::uint64_t{1} << bits) - 1);
}

struct Layout {
  int stride;    // slots per element
  int in_slots;  // slots written per input element
  bool base;     // inputs lie in F_q: no y-part
  int bits;
};

void pack(const KroneckerTables& t, const Layout& L, int n, const Elem* a, std::size_t na, mpz_t out) {
  BitPack bp(na * L.stride, L.bits);
  for (std::size_t k = 0; k < na; ++k) {
    if (a[k] == 0) continue;
    const std::uint8_t* c = &t.coords[static_cast<std::size_t>(a[k]) * 2 * n];
    const std::size_t s0 = k * L.stride;
    for (int i = 0; i < n; ++i) {
      if (c[i]) bp.put(s0 + i, c[i]);
      if (!L.base && c[n + i]) bp.put(s0 + t.xspan + i, c[n + i]);
    }
  }
  mpz_import(out, bp.limbs().size(), -1, sizeof(std::uint64_t), 0, 0, bp.limbs().data());
}

std::vector<Elem> kronecker(const Field& f, const Elem* a, std::size_t na, const Elem* b, std::size_t nb,
                            std::size_t n, bool base, double bound) {
  const KroneckerTables& t = tables_for(f);
  const int deg_x = f.n();
  Layout L;
  L.base = base;
  L.stride = base ? t.xspan : t.stride;
  L.in_slots = base ? deg_x : 2 * deg_x;
  L.bits = 1;
  while (std::ldexp(1.0, L.bits) <= bound) ++L.bits;
  mpz_t za, zb, zr;
  mpz_inits(za, zb, zr, nullptr);
  pack(t, L, deg_x, a, na, za);
  if (a == b && na == nb) {
    mpz_mul(zr, za, za);
  } else {
    pack(t, L, deg_x, b, nb, zb);
    mpz_mul(zr, za, zb);
  }
  std::vector<std::uint64_t> wr(mpz_size(zr) + 1, 0);
  std::size_t count = 0;
  mpz_export(wr.data(), &count, -1, sizeof(std::uint64_t), 0, 0, zr);
  mpz_clears(za, zb, zr, nullptr);

  std::vector<Elem> out(n, 0);
  const int p = t.p;
  const std::size_t limit = std::min(n, na + nb - 1);
  for (std::size_t k = 0; k < limit; ++k) {
    Elem acc = 0;
    for (int s = 0; s < L.stride; ++s) {
      const std::uint64_t v = get_bits(wr, k * L.stride + s, L.bits);
      if (v == 0) continue;
      acc = f.add(acc, t.scaled[s * p + static_cast<int>(v % static_cast<std::uint64_t>(p))]);
    }
    out[k] = acc;
  }
  return out;
}

std::vector<Elem> schoolbook(const Field& f, const Elem* a, std::size_t na, const Elem* b, std::size_t nb,
                             std::size_t n) {
  std::vector<Elem> r(n, 0);
  for (std::size_t i = 0; i < na && i < n; ++i) {
    if (a[i] == 0) continue;
    const std::size_t top = std::min(nb, n - i);
    Elem* out = &r[i];
    for (std::size_t j = 0; j < top; ++j)
      if (b[j] != 0) out[j] = f.add(out[j], f.mul(a[i], b[j]));
  }
  return r;
}

}  // namespace

std::vector<Elem> mul_low(const Field& f, const Elem* a, std::size_t na, const Elem* b, std::size_t nb,
                          std::size_t n) {
  na = std::min(na, n);
  nb = std::min(nb, n);
  while (na && a[na - 1] == 0) --na;
  while (nb && b[nb - 1] == 0) --nb;
  if (na == 0 || nb == 0 || n == 0) return std::vector<Elem>(n, 0);
  if (std::min(na, nb) < kKroneckerThreshold) return schoolbook(f, a, na, b, nb, n);
  const int q = f.q();
  const bool base = std::all_of(a, a + na, [q](Elem c) { return c < q; }) &&
                    std::all_of(b, b + nb, [q](Elem c) { return c < q; });
  // Largest slot value: terms per output digit times (p-1)^2.
  const double bound = static_cast<double>(std::min(na, nb)) * 2.0 * f.n() * (f.p() - 1.0) * (f.p() - 1.0);
  return kronecker(f, a, na, b, nb, n, base, bound);
}

std::vector<std::vector<Elem>> mul_series_polys(const Field& f, const std::vector<std::vector<Elem>>& A,
                                                const std::vector<std::vector<Elem>>& B, std::size_t width) {
  if (A.empty() || B.empty()) return {};
  std::size_t wa = 0, wb = 0;
  for (const auto& r : A) wa = std::max(wa, r.size());
  for (const auto& r : B) wb = std::max(wb, r.size());
  if (wa == 0 || wb == 0) return std::vector<std::vector<Elem>>(A.size() + B.size() - 1, std::vector<Elem>(width, 0));
  const std::size_t R = wa + wb - 1;
  auto flatten = [R](const std::vector<std::vector<Elem>>& M) {
    std::vector<Elem> flat(M.size() * R, 0);
    for (std::size_t i = 0; i < M.size(); ++i) std::copy(M[i].begin(), M[i].end(), flat.begin() + i * R);
    return flat;
  };
  const std::vector<Elem> fa = flatten(A), fb = flatten(B);
  const int q = f.q();
  const bool base = std::all_of(fa.begin(), fa.end(), [q](Elem c) { return c < q; }) &&
                    std::all_of(fb.begin(), fb.end(), [q](Elem c) { return c < q; });
  const double bound = static_cast<double>(std::min(A.size(), B.size())) * static_cast<double>(std::min(wa, wb)) *
                       2.0 * f.n() * (f.p() - 1.0) * (f.p() - 1.0);
  const std::size_t rows = A.size() + B.size() - 1;
  const std::vector<Elem> flat = kronecker(f, fa.data(), fa.size(), fb.data(), fb.size(), rows * R, base, bound);
  std::vector<std::vector<Elem>> out(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    const std::size_t w = std::min(width, R);
    out[k].assign(flat.begin() + k * R, flat.begin() + k * R + w);
    out[k].resize(width, 0);
  }
  return out;
}

}  // namespace dcm

#include "drincm/forms.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "drincm/errors.hpp"
#include "drincm/irreducible.hpp"

namespace dcm {

std::string to_string(const ReducedTriple& t) {
  return to_string(t.a) + " | " + to_string(t.b) + " | " + to_string(t.c);
}

TripleEnumerator::TripleEnumerator(FieldRef f, int max_deg_a) : f_(f), max_deg_(max_deg_a) {
  by_deg_.resize(static_cast<std::size_t>(max_deg_a) + 1);
  std::uint32_t span = 1;
  for (int k = 0; k <= max_deg_a; ++k, span *= static_cast<std::uint32_t>(f->q())) {
    for (PolyA& a : monic_polys(f, k)) {
      Block blk;
      blk.a = std::move(a);
      std::vector<std::uint32_t> residue(span);
      blk.offsets.assign(span + 1, 0);
      for (std::uint32_t code = 0; code < span; ++code) {
        PolyA b = PolyA::decode(f, code);
        residue[code] = static_cast<std::uint32_t>(((b * b) % blk.a).encode());
        ++blk.offsets[residue[code] + 1];
      }
      for (std::uint32_t r = 0; r < span; ++r) blk.offsets[r + 1] += blk.offsets[r];
      blk.bs.resize(span);
      std::vector<std::uint32_t> fill(blk.offsets.begin(), blk.offsets.end() - 1);
      for (std::uint32_t code = 0; code < span; ++code) blk.bs[fill[residue[code]]++] = code;
      blk.coprime.resize(span);
      for (std::uint32_t i = 0; i < span; ++i)
        blk.coprime[i] = gcd(blk.a, PolyA::decode(f, blk.bs[i])).is_one();
      by_deg_[k].push_back(std::move(blk));
    }
  }
}

const TripleEnumerator& TripleEnumerator::get(FieldRef f, int max_deg_a) {
  static std::mutex mu;
  static std::map<FieldRef, std::unique_ptr<TripleEnumerator>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[f];
  if (!slot || slot->max_deg_a() < max_deg_a) slot = std::make_unique<TripleEnumerator>(f, max_deg_a);
  return *slot;
}

void TripleEnumerator::scan(const PolyA& delta, int k, std::vector<ReducedTriple>& out) const {
  const Elem inv4 = f_->inv(f_->from_int(4));
  for (const Block& blk : by_deg_[k]) {
    const auto r = static_cast<std::uint32_t>((delta % blk.a).encode());
    for (std::uint32_t i = blk.offsets[r]; i < blk.offsets[r + 1]; ++i) {
      PolyA b = PolyA::decode(f_, blk.bs[i]);
      PolyA c = exact_div(b * b - delta, blk.a).scaled(inv4);
      if (k > 0 && !blk.coprime[i] && !gcd3(blk.a, b, c).is_one()) continue;
      out.push_back({blk.a, std::move(b), std::move(c)});
    }
  }
}

std::vector<ReducedTriple> TripleEnumerator::enumerate_deg(const PolyA& delta, int k) const {
  if (2 * k > delta.deg()) return {};
  if (k > max_deg_) throw PreconditionViolated("enumerator tables stop at deg a = " + std::to_string(max_deg_));
  std::vector<ReducedTriple> out;
  scan(delta, k, out);
  return out;
}

std::vector<ReducedTriple> TripleEnumerator::enumerate(const PolyA& delta) const {
  if (delta.deg() / 2 > max_deg_)
    throw PreconditionViolated("enumerator tables stop at deg a = " + std::to_string(max_deg_));
  std::vector<ReducedTriple> out;
  for (int k = 0; 2 * k <= delta.deg(); ++k) scan(delta, k, out);
  return out;
}

std::vector<ReducedTriple> enumerate_T(const ImagDiscriminant& disc) {
  return TripleEnumerator::get(disc.field(), disc.delta.deg() / 2).enumerate(disc.delta);
}

int class_number(const ImagDiscriminant& disc) { return static_cast<int>(enumerate_T(disc).size()); }

bool is_reduced_triple(const ReducedTriple& t, const PolyA& delta) {
  if (!t.a.is_monic()) return false;
  if (!(t.b.deg() < t.a.deg() && t.a.deg() <= t.c.deg())) return false;
  FieldRef F = delta.field();
  if (t.b * t.b - (t.a * t.c).scaled(F->from_int(4)) != delta) return false;
  return gcd3(t.a, t.b, t.c).is_one();
}

std::int64_t default_cm_rel(const ImagDiscriminant& disc, std::int64_t rel) {
  const int e = disc.place_type == PlaceType::Ramified ? 2 : 1;
  return std::max<std::int64_t>(rel, e * disc.delta.deg() + 4);
}

CMPoint cm_point(const ReducedTriple& t, const ImagDiscriminant& disc, const LaurentSeries& r) {
  const int e = r.e();
  const std::int64_t rel = r.rel_prec();
  const LaurentSeries two_a = LaurentSeries::from_poly(t.a.scaled(disc.field()->from_int(2)), e,
                                                       -static_cast<std::int64_t>(e) * t.a.deg() + rel);
  LaurentSeries z = (r - LaurentSeries::from_poly(t.b, e, r.prec())) * two_a.inverse();
  const std::int64_t wide = z.prec() + 2 * e * disc.delta.deg() + 8;
  auto lift = [&](const PolyA& p) { return LaurentSeries::from_poly(p, e, wide); };
  const LaurentSeries residual = lift(t.a) * z * z + lift(t.b) * z + lift(t.c);
  if (!residual.is_zero()) throw ConsistencyFailure("a z^2 + b z + c is not zero for " + to_string(t));
  return {t, std::move(z), disc};
}

CMPoint cm_point(const ReducedTriple& t, const ImagDiscriminant& disc, std::int64_t rel) {
  const int e = disc.place_type == PlaceType::Ramified ? 2 : 1;
  return cm_point(t, disc, sqrt_poly(disc.delta, default_cm_rel(disc, rel), e));
}

std::vector<LaurentSeries> cm_points_low(const ImagDiscriminant& disc, const std::vector<ReducedTriple>& T) {
  const int e = disc.place_type == PlaceType::Ramified ? 2 : 1;
  const int D = disc.delta.deg();
  // |z| >= 1, so digits down to s^1 decide |z - nearest_A(z)|.
  const LaurentSeries r = sqrt_poly(disc.delta, e * ((D + 1) / 2) + 2, e);
  const Elem two = disc.field()->from_int(2);
  std::unordered_map<std::uint64_t, LaurentSeries> inv;
  std::vector<LaurentSeries> out;
  out.reserve(T.size());
  for (const ReducedTriple& t : T) {
    auto it = inv.find(t.a.encode());
    if (it == inv.end()) {
      const std::int64_t v = -static_cast<std::int64_t>(e) * t.a.deg();
      it = inv.emplace(t.a.encode(), LaurentSeries::from_poly(t.a.scaled(two), e, v + r.rel_prec()).inverse()).first;
    }
    out.push_back((r - LaurentSeries::from_poly(t.b, e, r.prec())) * it->second);
  }
  return out;
}

PointMetrics metrics(const LaurentSeries& z) {
  PointMetrics m;
  m.abs = z.abs();
  m.dist_A = nearest_A(z).dist;
  m.dist_kinf = dist_kinf(z);
  m.in_F = !m.abs.is_zero() && m.abs == m.dist_kinf && m.abs.half_log() >= 0;
  return m;
}

std::map<Elem, int> near_root_counts(const ImagDiscriminant& disc) {
  std::map<Elem, int> counts;
  const PolyA& delta = disc.delta;
  const int D = delta.deg();
  // |z| = q^(D/2 - deg a), while |z - u| < 1 forces |z| = 1.
  if (D % 2) return counts;
  const auto triples = TripleEnumerator::get(disc.field(), D / 2).enumerate_deg(delta, D / 2);
  if (triples.empty()) return counts;
  const int e = disc.place_type == PlaceType::Ramified ? 2 : 1;
  const LaurentSeries r = sqrt_poly(delta, e * D + 4, e);
  const Field& F = *disc.field();
  for (const ReducedTriple& t : triples) {
    const LaurentSeries z = cm_point(t, disc, r).z;
    if (z.is_zero() || z.valuation() != 0) continue;
    const Elem u = z.coeff(0);
    if (F.in_fq(u)) continue;
    const LaurentSeries diff = z - LaurentSeries::constant(disc.field(), u, e, z.prec());
    // |delta|^(-1/2) = q^(-D/2), i.e. half-log -D.
    const bool near = diff.is_zero() ? diff.prec() * (2 / e) > D : diff.abs().half_log() < -D;
    if (near) ++counts[u];
  }
  return counts;
}

int near_root_count(const ImagDiscriminant& disc, Elem u) {
  if (disc.field()->in_fq(u)) throw PreconditionViolated("u must lie outside F_q");
  auto counts = near_root_counts(disc);
  auto it = counts.find(u);
  return it == counts.end() ? 0 : it->second;
}

}  // namespace dcm

namespace dcm {

std::vector<std::vector<std::size_t>> lattice_classes(const ImagDiscriminant& disc,
                                                      const std::vector<ReducedTriple>& T) {
  FieldRef f = disc.field();
  const Field& F = *f;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> index;
  for (std::size_t i = 0; i < T.size(); ++i) index[{T[i].a.encode(), T[i].b.encode()}] = i;
  std::vector<std::optional<std::size_t>> cls(T.size());
  std::vector<std::vector<std::size_t>> out;
  const Elem c0 = F.div(disc.delta.lc(), F.from_int(4));
  const Elem two = F.from_int(2);
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (cls[i]) continue;
    cls[i] = out.size();
    out.push_back({i});
    const ReducedTriple& t = T[i];
    if (t.a.deg() != t.c.deg()) continue;
    for (int k = 0; k < F.q(); ++k) {
      const Elem al = static_cast<Elem>(k);
      const Elem al2 = F.mul(al, al);
      const Elem lam = F.inv(F.sub(al2, c0));
      const PolyA A = (t.a.scaled(al2) - t.b.scaled(al) + t.c).scaled(lam);
      const PolyA B = (t.a.scaled(F.neg(F.mul(two, F.mul(al, c0)))) + t.b.scaled(F.add(al2, c0)) -
                       t.c.scaled(F.mul(two, al)))
                          .scaled(lam);
      auto it = index.find({A.encode(), B.encode()});
      if (!A.is_monic() || it == index.end())
        throw ConsistencyFailure("torus image of " + to_string(t) + " is not a reduced triple");
      if (cls[it->second] && *cls[it->second] != *cls[i])
        throw ConsistencyFailure("torus orbits overlap at " + to_string(T[it->second]));
      if (!cls[it->second]) {
        cls[it->second] = *cls[i];
        out.back().push_back(it->second);
      }
    }
    std::sort(out.back().begin(), out.back().end());
    if (out.back().size() != static_cast<std::size_t>(F.q()) + 1)
      throw ConsistencyFailure("torus orbit of " + to_string(t) + " has " + std::to_string(out.back().size()) +
                               " members");
  }
  return out;
}

int conjugate_count(const ImagDiscriminant& disc) {
  return static_cast<int>(lattice_classes(disc, enumerate_T(disc)).size());
}

}  // namespace dcm

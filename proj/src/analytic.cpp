#include "drincm/analytic.hpp"

#include <algorithm>

#include "drincm/errors.hpp"

namespace dcm {
namespace {

using i128 = __int128;

std::int64_t clamp(i128 v) {
  if (v > kNoLimit) return kNoLimit;
  if (v < -kNoLimit) return -kNoLimit;
  return static_cast<std::int64_t>(v);
}

// Magnitudes are kept as L = -v, the exponent of |x| in s-units.
// |e_V(w)| for V with orthogonal sorted basis of magnitudes `prev`:
// each element of V whose top basis vector is b_k contributes once.
std::int64_t image_magnitude(int q, const std::vector<std::int64_t>& prev, std::int64_t Lw) {
  i128 acc = Lw, count = q - 1;
  for (std::int64_t Lk : prev) {
    if (Lw > Lk) acc += count * (Lw - Lk);
    if (acc >= kNoLimit) return kNoLimit;
    count *= q;
    if (count > kNoLimit) count = kNoLimit;
  }
  return clamp(acc);
}

// Valuation bound for the change in a_k caused by a remaining lattice whose
// image has magnitude >= M: min over i of (q^i - 1) M + q^i v(a_{k-i}).
std::int64_t tail_bound(int q, std::int64_t M, const std::array<std::int64_t, 4>& v, int k) {
  i128 best = kNoLimit;
  i128 Q = 1;
  for (int i = 1; i <= k; ++i) {
    Q *= q;
    const i128 term = (Q - 1) * M + Q * v[k - i];
    best = std::min(best, term);
  }
  return clamp(best);
}

struct Vec {
  LaurentSeries w;
  std::int64_t L;
};

struct Tower {
  std::array<LaurentSeries, 4> a;  // a[0] = 1 implicitly
  std::vector<std::int64_t> mags;  // original |w| of processed vectors
  int used = 0;
};

std::array<std::int64_t, 4> valuations(const Tower& T) {
  return {0, T.a[1].valuation(), T.a[2].valuation(), T.a[3].valuation()};
}

// Runs the subspace tower over the sorted basis. With early_stop, processing
// ends once the image of every remaining vector is too large to affect any
// a_k within its precision.
Tower run_tower(FieldRef f, int e, const std::vector<Vec>& basis, std::int64_t rel, bool early_stop) {
  const int q = f->q();
  Tower T;
  for (int k = 1; k <= 3; ++k) T.a[k] = LaurentSeries::zero(f, e, kNoLimit);
  std::vector<LaurentSeries> gammas;
  for (const Vec& b : basis) {
    const std::int64_t M = image_magnitude(q, T.mags, b.L);
    if (early_stop) {
      const auto v = valuations(T);
      bool negligible = true;
      for (int k = 1; k <= 3 && negligible; ++k) negligible = tail_bound(q, M, v, k) >= T.a[k].prec();
      if (negligible) break;
    }
    if (M >= kNoLimit / q) break;
    LaurentSeries beta = b.w.truncated_rel(rel);
    for (const LaurentSeries& g : gammas) beta = beta - g * beta.frob_pow(1, rel);
    if (beta.is_zero())
      throw DegenerateLattice("lattice vector maps to zero to precision " + std::to_string(beta.prec()));
    if (-beta.valuation() != M)
      throw ConsistencyFailure("|e_V(w)| = q^(" + std::to_string(-beta.valuation()) + "/" + std::to_string(e) +
                               "), expected q^(" + std::to_string(M) + "/" + std::to_string(e) + ")");
    beta = beta.truncated_rel(rel);
    LaurentSeries gamma = (beta * beta.frob_pow(1, rel).inverse()).truncated_rel(rel);
    for (int k = 3; k >= 2; --k) T.a[k] = T.a[k] - gamma * T.a[k - 1].frob_pow(1, rel);
    T.a[1] = T.a[1] - gamma;
    gammas.push_back(std::move(gamma));
    T.mags.push_back(b.L);
    ++T.used;
  }
  return T;
}

ExpCoeffs finish(const Tower& T, int q, int D, int total, std::int64_t M_omitted) {
  ExpCoeffs out;
  out.trunc_deg = D;
  out.vectors_used = T.used;
  out.vectors_total = total;
  const auto v = valuations(T);
  out.err_exponent = kNoLimit;
  for (int k = 1; k <= 3; ++k) {
    out.err_abs[k - 1] = M_omitted >= kNoLimit ? kNoLimit : tail_bound(q, M_omitted, v, k);
    out.alpha[k - 1] = T.a[k].truncated(out.err_abs[k - 1]);
    const std::int64_t relk = clamp(static_cast<i128>(out.err_abs[k - 1]) - v[k]);
    out.err_exponent = std::min(out.err_exponent, relk);
  }
  return out;
}

}  // namespace

ExpCoeffs exp_tower(const LaurentSeries& z, int D, const ExpOptions& opt) {
  if (D < 0) throw PreconditionViolated("truncation degree must be nonnegative");
  if (z.is_zero() || z.valuation() > 0) throw DegenerateLattice("need |z| >= 1");
  const AbsValue dk = dist_kinf(z);
  if (dk.is_zero()) throw DegenerateLattice("z lies in k_inf to precision " + std::to_string(z.prec()));
  if (dk != z.abs()) throw DegenerateLattice("|z|_i < |z|: {t^i z, t^i} is not an orthogonal basis");
  FieldRef f = z.field();
  const int e = z.e(), q = f->q();
  const std::int64_t Lz = -z.valuation();
  std::vector<Vec> basis;
  for (int i = 0; i <= D; ++i) {
    basis.push_back({LaurentSeries::t_power(f, i, e, -static_cast<std::int64_t>(e) * i + opt.rel),
                     static_cast<std::int64_t>(e) * i});
    basis.push_back({z.shifted(-static_cast<std::int64_t>(e) * i), static_cast<std::int64_t>(e) * i + Lz});
  }
  // Ties (|t^(i+r)| = |t^i z|) keep the A-vector first.
  std::stable_sort(basis.begin(), basis.end(), [](const Vec& x, const Vec& y) { return x.L < y.L; });

  const Tower T = run_tower(f, e, basis, opt.rel, opt.early_stop);
  std::vector<std::int64_t> all;
  for (const Vec& b : basis) all.push_back(b.L);
  const std::int64_t M = image_magnitude(q, all, static_cast<std::int64_t>(e) * (D + 1));
  return finish(T, q, D, static_cast<int>(basis.size()), M);
}

ExpCoeffs exp_tower_basis(const std::vector<LaurentSeries>& basis, std::int64_t rel) {
  if (basis.empty()) throw PreconditionViolated("empty basis");
  FieldRef f = basis[0].field();
  std::vector<Vec> vs;
  for (const LaurentSeries& w : basis) {
    if (w.is_zero()) throw DegenerateLattice("zero basis vector");
    if (!vs.empty() && -w.valuation() < vs.back().L) throw PreconditionViolated("basis not sorted by |w|");
    vs.push_back({w, -w.valuation()});
  }
  const Tower T = run_tower(f, basis[0].e(), vs, rel, false);
  return finish(T, f->q(), 0, static_cast<int>(vs.size()), kNoLimit);
}

namespace {

// A polynomial as a series with `rel` digits past its leading term.
LaurentSeries lift(const PolyA& p, int e, std::int64_t rel) {
  return LaurentSeries::from_poly(p, e, -static_cast<std::int64_t>(e) * p.deg() + rel);
}

PolyA t_q_minus_t(FieldRef f, int k) {
  std::int64_t Q = 1;
  for (int i = 0; i < k; ++i) Q *= f->q();
  return PolyA::monomial(f, 1, static_cast<int>(Q)) - PolyA::t(f);
}

std::int64_t rel_of(const LaurentSeries& x) { return std::max<std::int64_t>(x.rel_prec(), 1); }

}  // namespace

LaurentSeries alpha3_by_recursion(const LaurentSeries& a1, const LaurentSeries& a2) {
  FieldRef f = a1.field();
  const int e = a1.e();
  const std::int64_t r1 = rel_of(a1), r2 = rel_of(a2);
  const LaurentSeries g = lift(t_q_minus_t(f, 1), e, r1) * a1;
  const LaurentSeries Delta = lift(t_q_minus_t(f, 2), e, r2) * a2 - g * a1.frob_pow(1, r1);
  const LaurentSeries num = g * a2.frob_pow(1, r2) + Delta * a1.frob_pow(2, r1);
  return num * lift(t_q_minus_t(f, 3), e, rel_of(num)).inverse();
}

DrinfeldCoeffs drinfeld_coeffs(const ExpCoeffs& exp) {
  const LaurentSeries &a1 = exp.alpha[0], &a2 = exp.alpha[1], &a3 = exp.alpha[2];
  FieldRef f = a1.field();
  const int e = a1.e();
  const std::int64_t r1 = rel_of(a1), r2 = rel_of(a2), r3 = rel_of(a3);
  DrinfeldCoeffs out;
  out.g = lift(t_q_minus_t(f, 1), e, r1) * a1;
  out.Delta = lift(t_q_minus_t(f, 2), e, r2) * a2 - out.g * a1.frob_pow(1, r1);
  if (out.Delta.is_zero())
    throw DeltaZeroToPrecision("Delta vanishes to precision " + std::to_string(out.Delta.prec()));
  const std::int64_t rg = rel_of(out.g);
  out.j = out.g * out.g.frob_pow(1, rg) * out.Delta.inverse();
  out.residual = lift(t_q_minus_t(f, 3), e, r3) * a3 - out.g * a2.frob_pow(1, r2) - out.Delta * a1.frob_pow(2, r1);
  if (!out.residual.is_zero())
    throw ConsistencyFailure("functional equation residual " + to_string(out.residual.truncated_rel(4)));
  return out;
}

namespace {

// j from the tower at working precision `rel`, doubling D until the
// truncation error lies below the series precision of alpha_1 and alpha_2.
// Then alpha_1, alpha_2 agree with those of every larger D within precision.
LaurentSeries j_at(const LaurentSeries& z, std::int64_t rel, const JOptions& opt, int& D) {
  for (D = opt.d_start;; D *= 2) {
    if (D > opt.d_cap) throw PrecisionCapExceeded("tower degree would exceed " + std::to_string(opt.d_cap));
    const ExpCoeffs exp = exp_tower(z, D, {rel, true});
    const DrinfeldCoeffs dc = drinfeld_coeffs(exp);
    if (exp.err_abs[0] >= exp.alpha[0].valuation() + rel && exp.err_abs[1] >= exp.alpha[1].valuation() + rel)
      return dc.j;
  }
}

template <class ZAt>
JResult j_adaptive(ZAt&& z_at, std::int64_t abs_prec, const JOptions& opt) {
  std::int64_t rel = 48;
  JResult out;
  while (true) {
    if (rel > opt.rel_cap) throw PrecisionCapExceeded("working precision would exceed " + std::to_string(opt.rel_cap));
    LaurentSeries j;
    try {
      j = j_at(z_at(rel), rel, opt, out.D);
    } catch (const DeltaZeroToPrecision&) {
      rel *= 2;
      continue;
    }
    if (j.prec() >= abs_prec) {
      out.j = j.truncated(abs_prec);
      out.rel_used = rel;
      return out;
    }
    const std::int64_t loss = rel - j.rel_prec();
    rel = std::max(rel + 16, abs_prec - j.valuation() + loss + 8);
  }
}

}  // namespace

JResult j_of_point(const LaurentSeries& z, std::int64_t abs_prec, const JOptions& opt) {
  return j_adaptive(
      [&](std::int64_t rel) {
        if (z.rel_prec() < rel)
          throw InsufficientPrecision("z has " + std::to_string(z.rel_prec()) + " digits, need " + std::to_string(rel));
        return z.truncated_rel(rel);
      },
      abs_prec, opt);
}

const LaurentSeries& SqrtCache::get(std::int64_t rel) {
  if (root_.field() == nullptr || root_.rel_prec() < rel) {
    const int e = disc_.place_type == PlaceType::Ramified ? 2 : 1;
    const std::int64_t want = std::max(rel, 2 * (root_.field() ? root_.rel_prec() : 0));
    root_ = sqrt_poly(disc_.delta, want, e);
  }
  return root_;
}

JResult j_invariant(const ReducedTriple& t, const ImagDiscriminant& disc, std::int64_t abs_prec, const JOptions& opt,
                    bool other_branch, SqrtCache* cache) {
  const int e = disc.place_type == PlaceType::Ramified ? 2 : 1;
  return j_adaptive(
      [&](std::int64_t rel) {
        // |2a| <= |sqrt(delta)|, so z keeps at least the digits of the root.
        const std::int64_t need = rel + e * disc.delta.deg();
        LaurentSeries r = cache ? cache->get(need).truncated_rel(need) : sqrt_poly(disc.delta, need, e);
        if (other_branch) r = -r;
        return cm_point(t, disc, r).z.truncated_rel(rel);
      },
      abs_prec, opt);
}

LaurentSeries conjugate_over_kinf(const LaurentSeries& x) {
  if (x.e() == 1) return x.conj_coeffs();
  if (x.is_zero()) return x;
  FieldRef f = x.field();
  LaurentSeries::Coeffs c = x.coeffs();
  const std::int64_t i0 = x.valuation();
  for (std::size_t k = 0; k < c.size(); ++k)
    if ((i0 + static_cast<std::int64_t>(k)) % 2 != 0) c[k] = f->neg(c[k]);
  return LaurentSeries::from_coeffs(f, 2, i0, std::move(c), x.prec());
}

NearRoot j_near_root(const LaurentSeries& z, Elem u) {
  FieldRef f = z.field();
  const Field& F = *f;
  if (F.in_fq(u)) throw PreconditionViolated("u must lie outside F_q");
  const int e = z.e(), q = F.q();
  const LaurentSeries d = z - LaurentSeries::constant(f, u, e, z.prec());
  // |z - u| < q^-1 means v(z - u) > e.
  if (d.valuation() <= e) throw PreconditionViolated("need |z - u| < q^-1");
  if (d.is_zero()) throw InsufficientPrecision("z - u vanishes to precision");
  if (nearest_A(z).dist.half_log() <= -2) throw PreconditionViolated("need |z|_A > q^-1");
  NearRoot out;
  out.predicted_abs = AbsValue::from_half_log(2 * q) * AbsValue::from_half_log((q + 1) * d.abs().half_log());
  const Elem w = F.sub(1, F.pow(u, static_cast<std::uint64_t>(q - 1)));
  const Elem c = F.inv(F.mul(F.mul(u, u), F.mul(w, w)));
  out.first_order = (d * d.frob_pow(1, d.rel_prec())).scaled(c).shifted(-static_cast<std::int64_t>(e) * q);
  return out;
}

}  // namespace dcm

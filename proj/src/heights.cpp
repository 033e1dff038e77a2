#include "drincm/heights.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "drincm/errors.hpp"
#include "drincm/irreducible.hpp"

namespace dcm {
namespace {

// Monic polynomial in X; rows[k] holds the s-digits lo, lo+1, ..., hi-1 of
// the X^k coefficient, the top row being the leading 1.
struct ArrayPoly {
  std::int64_t lo = 0, hi = 0;
  std::vector<std::vector<Elem>> rows;
};

ArrayPoly linear_factor(const LaurentSeries& J) {
  FieldRef f = J.field();
  ArrayPoly P;
  P.hi = J.prec();
  P.lo = std::min<std::int64_t>(0, J.valuation());
  const std::size_t w = static_cast<std::size_t>(P.hi - P.lo);
  P.rows.assign(2, std::vector<Elem>(w, 0));
  if (!J.is_zero()) {
    const auto& c = J.coeffs();
    const std::size_t off = static_cast<std::size_t>(J.valuation() - P.lo);
    for (std::size_t k = 0; k < c.size() && off + k < w; ++k) P.rows[0][off + k] = f->neg(c[k]);
  }
  P.rows[1][static_cast<std::size_t>(-P.lo)] = 1;
  return P;
}

ArrayPoly product(const std::vector<LaurentSeries>& roots, std::size_t lo, std::size_t hi, const Field& F) {
  if (hi - lo == 1) return linear_factor(roots[lo]);
  const std::size_t mid = lo + (hi - lo) / 2;
  const ArrayPoly A = product(roots, lo, mid, F), B = product(roots, mid, hi, F);
  ArrayPoly R;
  R.lo = A.lo + B.lo;
  R.hi = std::min(A.hi + B.lo, B.hi + A.lo);
  R.rows = mul_series_polys(F, A.rows, B.rows, static_cast<std::size_t>(std::max<std::int64_t>(R.hi - R.lo, 0)));
  return R;
}

int ramification(const ImagDiscriminant& disc) { return disc.place_type == PlaceType::Ramified ? 2 : 1; }

struct Expansion {
  std::vector<PolyA> coeffs;
  std::int64_t max_rel = 0;
  int max_D = 0;
};

// Conjugate classes with, for each, the class of (a, -b, c) (or -1).
struct Classes {
  std::vector<ReducedTriple> reps;
  std::vector<int> partner;
  std::size_t t_count = 0;
};

Classes classes_of(const ImagDiscriminant& disc) {
  const auto T = enumerate_T(disc);
  const auto cls = lattice_classes(disc, T);
  std::vector<int> class_of(T.size(), -1);
  Classes out;
  out.t_count = T.size();
  for (std::size_t k = 0; k < cls.size(); ++k) {
    for (std::size_t i : cls[k]) class_of[i] = static_cast<int>(k);
    out.reps.push_back(T[cls[k].front()]);
  }
  for (const ReducedTriple& t : out.reps) {
    const ReducedTriple m{t.a, -t.b, t.c};
    const auto it = std::find(T.begin(), T.end(), m);
    out.partner.push_back(it == T.end() ? -1 : class_of[static_cast<std::size_t>(it - T.begin())]);
  }
  return out;
}

// J for every class, computing one member of each {class, partner} pair and
// obtaining the other through the conjugation over k_inf. Partners share targets.
std::vector<JResult> conjugate_js(const ImagDiscriminant& disc, const Classes& C,
                                  const std::vector<std::int64_t>& targets, const JOptions& opt, bool other_branch) {
  SqrtCache cache(disc);
  std::vector<JResult> out(C.reps.size());
  std::vector<bool> done(C.reps.size(), false);
  for (std::size_t i = 0; i < C.reps.size(); ++i) {
    if (done[i]) continue;
    out[i] = j_invariant(C.reps[i], disc, targets[i], opt, other_branch, &cache);
    done[i] = true;
    const int k = C.partner[i];
    if (k >= 0 && !done[static_cast<std::size_t>(k)] && targets[static_cast<std::size_t>(k)] == targets[i]) {
      out[k] = out[i];
      out[k].j = conjugate_over_kinf(out[i].j);
      done[k] = true;
    }
  }
  return out;
}

Expansion expand(const ImagDiscriminant& disc, const Classes& C, const std::vector<std::int64_t>& targets,
                 const JOptions& opt, bool other_branch) {
  FieldRef f = disc.field();
  const int e = ramification(disc);
  Expansion out;
  std::vector<LaurentSeries> js;
  for (JResult& r : conjugate_js(disc, C, targets, opt, other_branch)) {
    out.max_rel = std::max(out.max_rel, r.rel_used);
    out.max_D = std::max(out.max_D, r.D);
    js.push_back(std::move(r.j));
  }
  const ArrayPoly H = product(js, 0, js.size(), *f);
  if (H.hi <= 0) throw RoundingFailure("precision does not reach past t^0");
  for (std::size_t k = 0; k < H.rows.size(); ++k) {
    LaurentSeries c = LaurentSeries::from_coeffs(f, e, H.lo, H.rows[k], H.hi);
    out.coeffs.push_back(round_to_A(c));
  }
  if (!out.coeffs.back().is_one()) throw RoundingFailure("class polynomial is not monic");
  return out;
}

ClassPolynomial class_polynomial_from_logs(const ImagDiscriminant& disc, const Classes& triples,
                                           const std::vector<std::optional<Rational>>& logs,
                                           const ClassPolyPolicy& policy) {
  const int e = ramification(disc);
  // log+|J_k| in s-units.
  std::vector<std::int64_t> big(logs.size(), 0);
  std::int64_t total = 0;
  for (std::size_t k = 0; k < logs.size(); ++k) {
    if (logs[k] && *logs[k] > 0) big[k] = numerator(Rational(*logs[k] * e)).convert_to<std::int64_t>();
    total += big[k];
  }
  std::vector<std::int64_t> targets(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) targets[i] = policy.guard + total - big[i];

  ClassPolynomial H;
  H.disc = disc;
  Expansion ex = expand(disc, triples, targets, policy.jopt, policy.other_branch);
  H.coeffs = std::move(ex.coeffs);
  H.prec_certificate = {policy.guard, ex.max_rel, ex.max_D, false};
  if (policy.verify_stability) {
    for (auto& t : targets) t *= 2;
    JOptions opt = policy.jopt;
    opt.d_start = std::max(opt.d_start, 2 * ex.max_D);
    opt.d_cap = std::max(opt.d_cap, opt.d_start);
    const Expansion again = expand(disc, triples, targets, opt, policy.other_branch);
    if (again.coeffs != H.coeffs)
      throw RoundingFailure("class polynomial changed under doubled precision and tower degree");
    H.prec_certificate.stability_checked = true;
  }
  return H;
}

std::vector<std::optional<Rational>> logs_for(const ImagDiscriminant& disc, const Classes& C, const JOptions& opt) {
  const int e = ramification(disc);
  std::vector<std::optional<Rational>> out;
  // Precision past s^0 decides whether |J| >= 1.
  for (const JResult& r : conjugate_js(disc, C, std::vector<std::int64_t>(C.reps.size(), 1), opt, false)) {
    if (r.j.is_zero()) out.emplace_back(std::nullopt);
    else out.emplace_back(Rational(-r.j.valuation(), e));
  }
  return out;
}

}  // namespace

std::string to_string(const ClassPolynomial& H) {
  std::string s;
  for (int k = H.degree(); k >= 0; --k) {
    if (H.coeffs[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    const std::string c = "(" + to_string(H.coeffs[k]) + ")";
    if (k == 0) s += c;
    else if (H.coeffs[k].is_one()) s += k == 1 ? "X" : "X^" + std::to_string(k);
    else s += c + (k == 1 ? "*X" : "*X^" + std::to_string(k));
  }
  return s.empty() ? "0" : s;
}

PolyA round_to_A(const LaurentSeries& x) {
  FieldRef f = x.field();
  const int e = x.e();
  if (x.prec() <= 0)
    throw RoundingFailure("precision " + std::to_string(x.prec()) + " does not reach past t^0");
  if (x.is_zero()) return PolyA(f);
  const std::int64_t i0 = x.valuation();
  const auto& c = x.coeffs();
  if (i0 < -static_cast<std::int64_t>(e) * (1 << 24)) throw RoundingFailure("degree too large");
  const int deg = i0 <= 0 ? static_cast<int>(-i0 / e) : 0;
  PolyA::Coeffs out(static_cast<std::size_t>(deg) + 1, 0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    const std::int64_t i = i0 + static_cast<std::int64_t>(k);
    if (i > 0 || i % e != 0 || !f->in_fq(c[k]))
      throw RoundingFailure("non-integral term s^" + std::to_string(i) + " with coefficient " + f->format(c[k]));
    out[static_cast<std::size_t>(-i / e)] = c[k];
  }
  return PolyA(f, std::move(out));
}

std::vector<PolyA> transform_class_poly(const std::vector<PolyA>& H, Elem alpha, Elem beta) {
  FieldRef f = H.back().field();
  const Elem ainv = f->inv(alpha);
  const int d = static_cast<int>(H.size()) - 1;
  std::vector<PolyA> out;
  for (int k = 0; k <= d; ++k)
    out.push_back(H[k].compose_affine(alpha, beta).scaled(f->pow(ainv, static_cast<std::uint64_t>(d - k))));
  return out;
}

std::vector<std::optional<Rational>> conjugate_logs(const ImagDiscriminant& disc, const JOptions& opt) {
  return logs_for(disc, classes_of(disc), opt);
}

ClassPolynomial class_polynomial(const ImagDiscriminant& disc, const ClassPolyPolicy& policy) {
  const Classes C = classes_of(disc);
  return class_polynomial_from_logs(disc, C, logs_for(disc, C, policy.jopt), policy);
}

std::vector<ReducedTriple> conjugate_triples(const ImagDiscriminant& disc) {
  return classes_of(disc).reps;
}

Rational weil_height(const std::vector<std::optional<Rational>>& logs) {
  if (logs.empty()) throw PreconditionViolated("no conjugates");
  Rational s = 0;
  for (const auto& l : logs)
    if (l && *l > 0) s += *l;
  return s / static_cast<int>(logs.size());
}

Rational weil_height(const ImagDiscriminant& disc) { return weil_height(conjugate_logs(disc)); }

Rational weil_height_newton(const ClassPolynomial& H) {
  Rational s = 0;
  for (const NewtonSlope& seg : newton_polygon(H.coeffs))
    if (seg.slope > 0) s += seg.slope * seg.multiplicity;
  return s / H.degree();
}

Rational graded_height(const Rational& hJ, int q) { return hJ / (q * q - 1); }

Rational graded_height(const ImagDiscriminant& disc) {
  return graded_height(weil_height(disc), disc.field()->q());
}

bool is_unit(const ClassPolynomial& H) {
  const PolyA& c0 = H.coeffs.front();
  return !c0.is_zero() && c0.is_constant();
}

HeightReport bound_report(const ImagDiscriminant& disc, double C_q, double O_q, const ClassPolyPolicy& policy) {
  const Classes triples = classes_of(disc);
  const auto logs = logs_for(disc, triples, policy.jopt);
  const ClassPolynomial H = class_polynomial_from_logs(disc, triples, logs, policy);
  HeightReport r;
  r.disc = disc;
  r.d = H.degree();
  r.hJ = weil_height(logs);
  r.hG = graded_height(r.hJ, disc.field()->q());
  r.is_unit = is_unit(H);
  r.C_q = C_q;
  r.O_q = O_q;
  r.lower_rhs = lower_bound_rhs(disc, C_q);
  r.upper_rhs = upper_bound_rhs(disc, r.d, O_q);
  r.slack = to_double(r.hJ) - r.lower_rhs;
  return r;
}

namespace {

Elem least_nonsquare(const Field& F) {
  for (int c = 1; c < F.q(); ++c)
    if (!F.is_square_fq(static_cast<Elem>(c))) return static_cast<Elem>(c);
  throw PreconditionViolated("F_q has no nonsquare");
}

// delta0 rescaled by a square so that its leading coefficient is 1 or the
// least nonsquare.
PolyA normalize_delta0(const PolyA& d0) {
  const Field& F = *d0.field();
  const Elem lc = d0.lc();
  const Elem target = F.is_square_fq(lc) ? Elem{1} : least_nonsquare(F);
  return d0.scaled(F.div(target, lc));
}

using OrderKey = std::pair<std::uint64_t, std::uint64_t>;

OrderKey key_of(const PolyA& d0, const PolyA& f0) { return {d0.encode(), f0.encode()}; }

bool efactor_side_condition(const ImagDiscriminant& disc) {
  if (disc.f0.deg() == 0) return true;
  const Factorization fac = factor(disc.f0);
  if (static_cast<int>(fac.factors.size()) > disc.f0.deg()) return false;
  for (const auto& [v, m] : fac.factors) {
    const EulerFactor ef = e_factor(v, disc.f0, disc.delta0);
    if (ef.value * 4 * Rational(ef.l) > 9) return false;
  }
  return true;
}

}  // namespace

std::vector<ImagDiscriminant> scan_grid(FieldRef f, int max_deg_delta0, int max_deg_f0) {
  std::vector<ImagDiscriminant> out;
  if (max_deg_delta0 < 1 || max_deg_f0 < 0) return out;
  const Field& F = *f;
  const Elem nu = least_nonsquare(F);
  for (int d = 1; d <= max_deg_delta0; ++d) {
    for (Elem lc : {Elem{1}, nu}) {
      for (const PolyA& m : monic_polys(f, d)) {
        const PolyA d0 = m.scaled(lc);
        if (!is_squarefree(d0) || classify_infinity(d0) == PlaceType::Split) continue;
        for (int k = 0; k <= max_deg_f0; ++k)
          for (const PolyA& f0 : monic_polys(f, k)) out.push_back(make_discriminant(f0, d0));
      }
    }
  }
  return out;
}

ScanResult scan(FieldRef f, const ScanConfig& cfg, const std::function<void(std::size_t, std::size_t)>& progress) {
  const std::vector<ImagDiscriminant> grid = scan_grid(f, cfg.max_deg_delta0, cfg.max_deg_f0);
  const std::size_t n = grid.size();
  const Field& F = *f;

  struct Source {
    std::size_t rep;
    Elem alpha = 1, beta = 0;
  };
  std::vector<std::optional<Source>> source(n);
  std::map<OrderKey, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[key_of(grid[i].delta0, grid[i].f0)] = i;
  for (std::size_t i = 0; i < n; ++i) {
    if (source[i]) continue;
    source[i] = Source{i};
    if (!cfg.use_symmetry) continue;
    for (int a = 1; a < F.q(); ++a) {
      for (int b = 0; b < F.q(); ++b) {
        const Elem alpha = static_cast<Elem>(a), beta = static_cast<Elem>(b);
        const PolyA d0 = normalize_delta0(grid[i].delta0.compose_affine(alpha, beta));
        const PolyA f0 = grid[i].f0.compose_affine(alpha, beta).monic();
        auto it = index.find(key_of(d0, f0));
        if (it != index.end() && !source[it->second]) source[it->second] = Source{i, alpha, beta};
      }
    }
  }

  std::vector<ScanRow> rows(n);
  std::vector<std::optional<ClassPolynomial>> polys(n);
  std::atomic<std::size_t> next{0}, done{0};
  std::mutex progress_mu;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      ScanRow& row = rows[i];
      row.disc = grid[i];
      try {
        const Classes triples = classes_of(grid[i]);
        row.t_count = static_cast<int>(triples.t_count);
        row.d = static_cast<int>(triples.reps.size());
        row.logs = logs_for(grid[i], triples, cfg.policy.jopt);
        if (source[i]->rep == i) polys[i] = class_polynomial_from_logs(grid[i], triples, row.logs, cfg.policy);
      } catch (const DomainError& e) {
        row.status = e.name();
        row.detail = e.what();
      }
      const std::size_t k = ++done;
      if (progress) {
        std::lock_guard lock(progress_mu);
        progress(k, n);
      }
    }
  };
  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  ScanResult out;
  for (std::size_t i = 0; i < n; ++i) {
    ScanRow& row = rows[i];
    const Source& src = *source[i];
    row.derived = src.rep != i;
    row.efactor_ok = efactor_side_condition(row.disc);
    if (row.status != "ok") continue;
    if (!polys[src.rep]) {
      row.status = rows[src.rep].status;
      row.detail = "derived from failed row " + std::to_string(src.rep);
      continue;
    }
    row.class_poly = row.derived ? transform_class_poly(polys[src.rep]->coeffs, src.alpha, src.beta)
                                 : polys[src.rep]->coeffs;
    ClassPolynomial H{row.class_poly, row.disc, polys[src.rep]->prec_certificate};
    row.hJ = weil_height(row.logs);
    row.hG = graded_height(row.hJ, F.q());
    row.hJ_newton = weil_height_newton(H);
    row.is_unit = is_unit(H);
    row.lower_rhs = lower_bound_rhs(row.disc, cfg.C_q);
    row.upper_rhs = upper_bound_rhs(row.disc, row.d, cfg.O_q);
    row.slack = to_double(row.hJ) - row.lower_rhs;
    if (row.hJ != row.hJ_newton) {
      row.status = "ConsistencyFailure";
      row.detail = "analytic and Newton-polygon heights differ";
    }
    if (row.is_unit) ++out.unit_count;
  }
  out.rows = std::move(rows);
  return out;
}

}  // namespace dcm

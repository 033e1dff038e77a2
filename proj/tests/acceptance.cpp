// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "drincm/analytic.hpp"
#include "drincm/config.hpp"
#include "drincm/errors.hpp"
#include "drincm/forms.hpp"
#include "drincm/heights.hpp"
#include "drincm/irreducible.hpp"
#include "drincm/newton.hpp"
#include "drincm/quadorder.hpp"
#include "drincm/report.hpp"
#include "naive_oracle.hpp"

using namespace dcm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

FieldRef field(int q) { return make_field(default_config(q)); }

bool admissible(const PolyA& delta) {
  return delta.deg() > 0 && (delta.deg() % 2 || !delta.field()->is_square_fq(delta.lc()));
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) note << "first failure: " << what << "; ";
    pass = false;
  }
};

// Shared between criteria.
struct State {
  bool c1_done = false;
  double c1_seconds = 0.0;
  std::uint64_t c3_points = 0, c3_bad = 0;
  double c3_seconds = 0.0;
  std::string c3_first_bad;
  ScanResult scan7;
  double scan7_seconds = 0.0;
  bool scan7_done = false;
};

State state;

// Criterion 1, with the CM-point checks of criterion 3 run on the same
// enumeration. Time spent on criterion 3 is excluded from criterion 1.
void form_enumeration(Outcome& out) {
  const auto t0 = Clock::now();
  double c3 = 0.0;
  std::uint64_t deltas = 0, triples = 0;
  for (int p : {3, 5, 7}) {
    FieldRef f = field(p);
    for (int D = 1; D <= 6; ++D) {
      const oracle::Census census = oracle::triple_census(p, D);
      const TripleEnumerator& en = TripleEnumerator::get(f, D / 2);
      std::uint64_t span = 1;
      for (int i = 0; i < D; ++i) span *= p;
      for (std::uint64_t code = span; code < span * p; ++code) {
        const PolyA delta = PolyA::decode(f, code);
        if (!admissible(delta)) continue;
        ++deltas;
        const std::vector<ReducedTriple> T = en.enumerate(delta);
        std::uint64_t sum = 0;
        for (const ReducedTriple& t : T) sum += oracle::triple_hash(t.a.encode(), t.b.encode(), t.c.encode());
        triples += T.size();
        const bool same = !T.empty() && static_cast<int>(T.size()) == census.counts[code] && sum == census.sums[code];
        out.require(same, "q=" + std::to_string(p) + " delta=" + to_string(delta));

        const auto t3 = Clock::now();
        const ImagDiscriminant disc = discriminant_from_delta(delta);
        const std::vector<LaurentSeries> zs = cm_points_low(disc, T);
        for (std::size_t i = 0; i < zs.size(); ++i) {
          const PointMetrics m = metrics(zs[i]);
          const bool ok = !m.abs.is_zero() && m.abs == m.dist_A && m.abs == m.dist_kinf && m.abs.log_q() >= 0;
          ++state.c3_points;
          if (!ok && state.c3_bad++ == 0) state.c3_first_bad = "q=" + std::to_string(p) + " " + to_string(T[i]);
        }
        c3 += seconds_since(t3);
      }
    }
  }
  state.c1_done = true;
  state.c3_seconds = c3;
  state.c1_seconds = seconds_since(t0) - c3;
  out.require(state.c1_seconds < 300.0, "runtime");
  out.note << deltas << " discriminants, " << triples << " triples, " << state.c1_seconds << " s";
}

void cm_norms(Outcome& out) {
  if (!state.c1_done) {
    Outcome c1;
    form_enumeration(c1);
  }
  out.require(state.c3_points > 0, "no points");
  out.require(state.c3_bad == 0, state.c3_first_bad);
  out.note << state.c3_points << " points, " << state.c3_bad << " violations, " << state.c3_seconds << " s";
}

// Degree cap per q for the near-root census; q = 3 covers every even degree <= 8.
int near_root_cap(int q) { return q == 3 ? 8 : q == 5 ? 6 : 4; }

void near_root_census(Outcome& out) {
  std::uint64_t deltas = 0, hits = 0;
  for (int q : {3, 5, 7, 9}) {
    FieldRef f = field(q);
    const Field& F = *f;
    for (int D = 2; D <= near_root_cap(q); D += 2) {
      for (const PolyA& m : monic_polys(f, D))
        for (Elem c = 1; c < q; ++c) {
          const PolyA delta = m.scaled(c);
          if (!admissible(delta)) continue;
          ++deltas;
          const ImagDiscriminant disc = discriminant_from_delta(delta);
          for (const auto& [u, n] : near_root_counts(disc)) {
            hits += n;
            const bool lc_match = F.mul(F.from_int(4), F.mul(u, u)) == delta.lc();
            out.require(!F.in_fq(u) && n <= 1, "count above one at " + to_string(delta));
            out.require(n == 0 || (lc_match && disc.place_type != PlaceType::Ramified),
                        "near root without 4u^2 = lc at " + to_string(delta));
          }
        }
    }
  }
  out.note << deltas << " discriminants, " << hits << " near roots";
}

// Points z = u + sum_{i >= k} c_i t^-i with c_k != 0, so |z - u| = q^-k.
void near_root_identity(Outcome& out) {
  std::mt19937 rng(20240611);
  int checked = 0;
  for (int q : {3, 5}) {
    FieldRef f = field(q);
    int per_q = 0;
    for (int k : {2, 3}) {
      for (int n = 0; n < 12; ++n) {
        Elem u;
        do u = static_cast<Elem>(rng() % (q * q));
        while (f->in_fq(u));
        LaurentSeries::Coeffs c(400, 0);
        c[0] = u;
        c[k] = static_cast<Elem>(1 + rng() % (q * q - 1));
        for (std::size_t i = k + 1; i < c.size(); ++i) c[i] = static_cast<Elem>(rng() % (q * q));
        const LaurentSeries z = LaurentSeries::from_coeffs(f, 1, 0, c, 400);
        const NearRoot nr = j_near_root(z, u);
        const Rational expect(q - (q + 1) * k);
        const JResult r = j_of_point(z, (q + 1) * k - q + 4);
        out.require(nr.predicted_abs.log_q() == expect, "predicted |j|");
        out.require(!r.j.is_zero() && r.j.abs().log_q() == expect, "log|j| at q=" + std::to_string(q));
        const LaurentSeries diff = r.j - nr.first_order;
        out.require(diff.is_zero() ? diff.prec() > nr.first_order.valuation()
                                   : diff.valuation() > nr.first_order.valuation(),
                    "first-order term");
        ++per_q;
      }
    }
    out.require(per_q >= 20, "too few points");
    checked += per_q;
  }
  out.note << checked << " points";
}

std::vector<ImagDiscriminant> integrality_grid() {
  std::vector<ImagDiscriminant> out;
  FieldRef f3 = field(3);
  out.push_back(discriminant_from_delta(parse_poly(f3, "4*t")));
  out.push_back(discriminant_from_delta(parse_poly(f3, "4*t^3")));
  for (ImagDiscriminant& d : scan_grid(field(7), 3, 0)) out.push_back(std::move(d));
  return out;
}

void exponential_consistency(Outcome& out) {
  const std::int64_t rel = 60;
  std::uint64_t lattices = 0;
  for (const ImagDiscriminant& disc : integrality_grid()) {
    for (const ReducedTriple& t : conjugate_triples(disc)) {
      const LaurentSeries z = cm_point(t, disc, rel + 8).z;
      std::int64_t last = -kNoLimit;
      for (int D = 1; D <= 5; ++D) {
        const ExpCoeffs e = exp_tower(z, D, {rel, true});
        out.require(e.err_exponent > last, "err_exponent not increasing at " + to_string(t));
        last = e.err_exponent;
        const LaurentSeries diff = e.alpha[2] - alpha3_by_recursion(e.alpha[0], e.alpha[1]);
        out.require(diff.is_zero() || diff.valuation() - e.alpha[2].valuation() >= e.err_exponent,
                    "alpha_3 routes differ at " + to_string(t));
      }
      ++lattices;
    }
  }
  out.note << lattices << " lattices, D = 1..5";
}

// log_q|J| for a conjugate whose low-precision value vanished.
Rational small_log(const ReducedTriple& t, const ImagDiscriminant& disc) {
  for (std::int64_t prec = 16; prec <= 4096; prec *= 2) {
    const JResult r = j_invariant(t, disc, prec);
    if (!r.j.is_zero()) return r.j.abs().log_q();
  }
  throw PrecisionCapExceeded("conjugate vanishes to s^4096 at " + to_string(t));
}

void integrality_and_stability(Outcome& out) {
  const auto grid = integrality_grid();
  std::uint64_t polys = 0, small = 0;
  for (const ImagDiscriminant& disc : grid) {
    try {
      const ClassPolynomial H = class_polynomial(disc);
      out.require(H.prec_certificate.stability_checked, "stability not checked");
      const auto triples = conjugate_triples(disc);
      const auto logs = conjugate_logs(disc);
      std::vector<Rational> analytic;
      Rational total = 0;
      for (std::size_t i = 0; i < logs.size(); ++i) {
        if (!logs[i]) ++small;
        analytic.push_back(logs[i] ? *logs[i] : small_log(triples[i], disc));
        total += analytic.back();
      }
      std::vector<Rational> slopes = slope_multiset(newton_polygon(H.coeffs));
      std::sort(analytic.begin(), analytic.end());
      std::sort(slopes.begin(), slopes.end());
      out.require(slopes == analytic, "slopes differ from analytic logs at " + to_string(disc.delta));
      out.require(!H.coeffs[0].is_zero() && total == H.coeffs[0].deg(), "sum of logs at " + to_string(disc.delta));
      ++polys;
    } catch (const std::exception& e) {
      out.require(false, to_string(disc.delta) + ": " + e.what());
    }
  }
  out.note << polys << " class polynomials, " << small << " conjugates with |J| < 1 recomputed";
}

void height_consistency(Outcome& out) {
  const int q = 7;
  std::uint64_t rows = 0;
  for (const ScanRow& row : state.scan7.rows) {
    const std::string at = to_string(row.disc.delta);
    out.require(row.status == "ok", row.status + " at " + at);
    out.require(row.hJ == row.hJ_newton, "analytic and Newton heights differ at " + at);
    out.require(row.hG * (q * q - 1) == row.hJ, "graded height at " + at);
    ++rows;
  }
  out.require(rows > 0, "empty scan");
  out.note << rows << " rows";
}

// Legendre symbol of delta0 mod v by searching A/v for a square root.
int chi_by_search(const PolyA& v, const PolyA& delta0) {
  const PolyA r = delta0 % v;
  if (r.is_zero()) return 0;
  for (int d = 0; d < v.deg(); ++d)
    for (const PolyA& g : monic_polys(v.field(), d))
      for (Elem c = 1; c < v.field()->q(); ++c) {
        const PolyA s = g.scaled(c);
        if ((s * s) % v == r) return 1;
      }
  return -1;
}

Rational euler_factor_direct(const PolyA& v, const PolyA& f0, const PolyA& delta0) {
  int m = 0;
  for (PolyA g = f0; (g % v).is_zero(); g = exact_div(g, v)) ++m;
  Rational l = 1;
  for (int i = 0; i < v.deg(); ++i) l *= v.field()->q();
  Rational lm = 1;
  for (int i = 0; i < m; ++i) lm *= l;
  const int chi = chi_by_search(v, delta0);
  return Rational(1 - chi) * (1 - 1 / lm) / ((l - chi) * (1 - 1 / l));
}

// Monic irreducibles of degree i, counted by sieving out every product of
// two monic polynomials of positive degree.
std::uint64_t irreducibles_by_sieve(FieldRef f, int i) {
  std::uint64_t span = 1;
  for (int k = 0; k < i; ++k) span *= f->q();
  std::vector<char> reducible(span, 0);
  for (int a = 1; 2 * a <= i; ++a) {
    const auto lo = monic_polys(f, a), hi = monic_polys(f, i - a);
    for (const PolyA& g : lo)
      for (const PolyA& h : hi) reducible[(g * h).encode() - span] = 1;
  }
  return static_cast<std::uint64_t>(std::count(reducible.begin(), reducible.end(), 0));
}

void quadorder_formulas(Outcome& out) {
  std::mt19937_64 rng(8);
  int sampled = 0;
  for (int q : {3, 5, 7, 9}) {
    FieldRef f = field(q);
    const auto irr = monic_irreducibles(f, 2);
    std::vector<PolyA> radicands;
    for (int d = 1; d <= 3; ++d)
      for (const PolyA& m : monic_polys(f, d))
        if (is_squarefree(m)) radicands.push_back(m);
    for (int it = 0; it < 25; ++it, ++sampled) {
      const PolyA& v = irr[rng() % irr.size()];
      const int m = 1 + static_cast<int>(rng() % 3);
      const PolyA f0 = pow(v, m) * (rng() % 2 ? irr[rng() % irr.size()] : PolyA::constant(f, 1));
      const PolyA delta0 = radicands[rng() % radicands.size()].scaled(static_cast<Elem>(1 + rng() % (q - 1)));
      const EulerFactor e = e_factor(v, f0, delta0);
      const std::string at = to_string(v) + ", " + to_string(f0) + ", " + to_string(delta0);
      out.require(e.value == euler_factor_direct(v, f0, delta0), "e_factor at " + at);
      out.require(e.value <= Rational(9, 4) / Rational(e.l), "bound at " + at);
      out.require(e.chi != 1 || e.value == 0, "split prime at " + at);
    }
    for (int n = 1; n <= 12; ++n) {
      const Rational d = mertens_sum(q, n) - n;
      out.require(d >= -2 && d <= 2, "mertens at q=" + std::to_string(q) + " n=" + std::to_string(n));
    }
    for (int i = 1; i <= 6; ++i)
      out.require(count_irreducibles(q, i) == irreducibles_by_sieve(f, i),
                  "count_irreducibles at q=" + std::to_string(q) + " i=" + std::to_string(i));
  }
  out.require(sampled == 100, "sample size");
  out.note << sampled << " Euler factors, mertens n <= 12, irreducible counts i <= 6";
}

void run_scan7() {
  if (state.scan7_done) return;
  FieldRef f = field(7);
  ScanConfig cfg;
  cfg.max_deg_delta0 = 3;
  cfg.max_deg_f0 = 1;
  const auto t0 = Clock::now();
  state.scan7 = scan(f, cfg);
  state.scan7_seconds = seconds_since(t0);
  state.scan7_done = true;
}

void evidence_table(Outcome& out) {
  out.require(state.scan7_seconds < 1800.0, "scan took longer than 30 minutes");
  std::map<int, double> min_slack;
  for (const ScanRow& row : state.scan7.rows) {
    const int D = row.disc.delta.deg();
    auto [it, fresh] = min_slack.emplace(D, row.slack);
    if (!fresh) it->second = std::min(it->second, row.slack);
  }
  out.require(min_slack.size() >= 3, "grid has fewer than three degrees");
  double floor = 0.0, beyond = 0.0;
  int rank = 0;
  std::ostringstream per_deg;
  for (const auto& [D, s] : min_slack) {
    per_deg << " deg " << D << ": " << format_double(s) << ";";
    if (rank < 2) floor = rank == 0 ? s : std::min(floor, s);
    else beyond = rank == 2 ? s : std::min(beyond, s);
    ++rank;
  }
  // The per-q constant is the minimum over the two smallest degrees; larger
  // degrees must not push it down.
  out.require(beyond >= floor, "slack decreases beyond the two smallest degrees");
  out.note << state.scan7.rows.size() << " rows in " << state.scan7_seconds << " s, unit_count "
           << state.scan7.unit_count << ", slack constant " << format_double(floor)
           << ", minimum slack per deg delta:" << per_deg.str();
}

std::string scan_bytes(int q, int max_deg_delta0, int max_deg_f0, int threads) {
  const Config c = default_config(q);
  ScanConfig cfg;
  cfg.max_deg_delta0 = max_deg_delta0;
  cfg.max_deg_f0 = max_deg_f0;
  cfg.threads = threads;
  const Report r = make_report(c, scan(make_field(c), cfg), 20000);
  return to_json(r).dump(2) + "\n" + to_csv(r);
}

void determinism(Outcome& out) {
  struct Grid {
    int q, d0, f0;
  };
  int reruns = 0;
  for (const Grid g : {Grid{5, 3, 1}, Grid{7, 3, 0}, Grid{3, 3, 1}}) {
    const std::string first = scan_bytes(g.q, g.d0, g.f0, 1);
    for (int threads : {1, 3}) {
      const std::string again = scan_bytes(g.q, g.d0, g.f0, threads);
      out.require(again == first, "q=" + std::to_string(g.q) + " with " + std::to_string(threads) + " threads");
      ++reruns;
    }
  }
  out.note << reruns << " reruns byte-identical";
}

}  // namespace

// With arguments, runs only the listed criteria.
int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::stoi(argv[i]));
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "form enumeration matches the naive scan", form_enumeration},
      {2, "near-root counts", near_root_census},
      {3, "CM-point norms coincide", cm_norms},
      {4, "near-root valuation identity", near_root_identity},
      {5, "exponential consistency", exponential_consistency},
      {6, "class-polynomial integrality and stability", integrality_and_stability},
      {7, "height consistency", [](Outcome& o) { run_scan7(); height_consistency(o); }},
      {8, "quadorder formulas", quadorder_formulas},
      {9, "evidence table", [](Outcome& o) { run_scan7(); evidence_table(o); }},
      {10, "determinism", determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Outcome out;
    const auto t0 = Clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %2d %s  %s [%.1f s]: %s\n", c.id, out.pass ? "PASS" : "FAIL", c.name, seconds_since(t0),
                out.note.str().c_str());
    std::fflush(stdout);
    failed += !out.pass;
  }
  return failed ? 1 : 0;
}

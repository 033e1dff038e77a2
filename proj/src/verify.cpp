#include "drincm/verify.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "drincm/analytic.hpp"
#include "drincm/errors.hpp"
#include "drincm/forms.hpp"
#include "drincm/heights.hpp"
#include "drincm/irreducible.hpp"
#include "drincm/newton.hpp"
#include "drincm/quadorder.hpp"

namespace dcm {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"cm-norms",   "near-root", "near-root-count", "mertens",
                                                 "newton",     "exp-consistency"};
  return names;
}

std::string canonical_suite(const std::string& name) {
  static const std::map<std::string, std::string> alias = {
      {"lemma5.3", "cm-norms"}, {"lemma5.4", "near-root"}, {"prop4.6", "near-root-count"}};
  if (name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end())
    return name;
  const auto it = alias.find(name);
  if (it == alias.end()) throw PreconditionViolated("unknown suite '" + name + "'");
  return it->second;
}

std::vector<PolyA> admissible_deltas(FieldRef f, int max_deg, bool even_only) {
  std::vector<PolyA> out;
  for (int D = 1; D <= max_deg; ++D) {
    if (even_only && D % 2) continue;
    for (const PolyA& m : monic_polys(f, D))
      for (Elem c = 1; c < f->q(); ++c) {
        if (D % 2 == 0 && f->is_square_fq(c)) continue;
        out.push_back(m.scaled(c));
      }
  }
  return out;
}

namespace {

int default_deg(const std::string& suite, int q) {
  if (suite == "cm-norms") return q == 3 ? 6 : 4;
  if (suite == "near-root-count") return q == 3 ? 8 : 4;
  if (suite == "newton") return q <= 5 ? 3 : 2;
  return q == 3 ? 4 : 3;
}

struct Tally {
  SuiteResult& r;
  void check(bool ok) {
    ++r.checked;
    if (!ok) {
      ++r.failed;
      r.pass = false;
    }
  }
};

void cm_norms(FieldRef f, int max_deg, SuiteResult& r) {
  Tally t{r};
  std::uint64_t points = 0;
  for (const PolyA& delta : admissible_deltas(f, max_deg)) {
    const auto disc = discriminant_from_delta(delta);
    for (const LaurentSeries& z : cm_points_low(disc, enumerate_T(disc))) {
      const PointMetrics m = metrics(z);
      t.check(m.abs == m.dist_A && m.abs == m.dist_kinf && m.abs.half_log() >= 0);
      ++points;
    }
  }
  r.summary["points"] = points;
}

void near_root(FieldRef f, const VerifyOptions& opt, SuiteResult& r) {
  Tally t{r};
  std::mt19937_64 rng(opt.seed);
  const int q = f->q(), qq = q * q;
  for (int k : {2, 3}) {
    for (int n = 0; n < opt.points; ++n) {
      Elem u;
      do u = static_cast<Elem>(rng() % qq);
      while (f->in_fq(u));
      LaurentSeries::Coeffs c(200 + 40 * k, 0);
      c[0] = u;
      c[k] = static_cast<Elem>(1 + rng() % (qq - 1));
      for (std::size_t i = k + 1; i < c.size(); ++i) c[i] = static_cast<Elem>(rng() % qq);
      const std::int64_t len = static_cast<std::int64_t>(c.size());
      const LaurentSeries z = LaurentSeries::from_coeffs(f, 1, 0, std::move(c), len);
      const NearRoot nr = j_near_root(z, u);
      const std::int64_t v = (q + 1) * k - q;
      const JResult j = j_of_point(z, v + 4);
      t.check(nr.predicted_abs.log_q() == Rational(q - (q + 1) * k));
      t.check(j.j.abs() == nr.predicted_abs);
      t.check((j.j - nr.first_order).valuation() > nr.first_order.valuation());
    }
  }
  r.summary["points"] = 2 * opt.points;
}

void near_root_count_suite(FieldRef f, int max_deg, SuiteResult& r) {
  Tally t{r};
  std::map<int, std::uint64_t> dist;
  const Elem four = f->from_int(4);
  for (const PolyA& delta : admissible_deltas(f, max_deg, true)) {
    const auto disc = discriminant_from_delta(delta);
    const auto counts = near_root_counts(disc);
    for (Elem u = 0; u < f->q2(); ++u) {
      if (f->in_fq(u)) continue;
      const auto it = counts.find(u);
      const int n = it == counts.end() ? 0 : it->second;
      ++dist[n];
      t.check(n <= 1);
      if (f->mul(four, f->mul(u, u)) != delta.lc() || disc.place_type == PlaceType::Ramified) t.check(n == 0);
    }
  }
  nlohmann::ordered_json d = nlohmann::ordered_json::object();
  for (auto [n, c] : dist) d[std::to_string(n)] = c;
  r.summary["distribution"] = d;
}

void mertens(FieldRef f, int n, SuiteResult& r) {
  Tally t{r};
  double worst = 0;
  for (int k = 1; k <= n; ++k) {
    const double dev = to_double(mertens_sum(f->q(), k) - k);
    worst = std::max(worst, std::abs(dev));
    t.check(dev >= -2 && dev <= 2);
  }
  r.summary["max_abs_deviation"] = worst;
}

void newton_suite(FieldRef f, int max_deg, SuiteResult& r) {
  Tally t{r};
  std::uint64_t discs = 0;
  for (const ImagDiscriminant& disc : scan_grid(f, max_deg, 0)) {
    const auto logs = conjugate_logs(disc);
    const ClassPolynomial H = class_polynomial(disc);
    std::vector<Rational> slopes, analytic;
    for (const NewtonSlope& s : newton_polygon(H.coeffs))
      for (int k = 0; k < s.multiplicity; ++k) slopes.push_back(s.slope);
    bool exact = true;
    Rational sum = 0;
    for (const auto& l : logs) {
      if (!l) exact = false;
      else {
        analytic.push_back(*l);
        sum += *l;
      }
    }
    std::sort(slopes.begin(), slopes.end());
    std::sort(analytic.begin(), analytic.end());
    if (exact) {
      t.check(slopes == analytic);
      if (!H.coeffs.front().is_zero()) t.check(sum == H.coeffs.front().deg());
    }
    t.check(weil_height(logs) == weil_height_newton(H));
    ++discs;
  }
  r.summary["discriminants"] = discs;
}

void exp_consistency(FieldRef f, int max_deg, SuiteResult& r) {
  Tally t{r};
  std::uint64_t lattices = 0;
  for (const PolyA& delta : admissible_deltas(f, max_deg)) {
    const auto disc = discriminant_from_delta(delta);
    for (const ReducedTriple& tr : enumerate_T(disc)) {
      const LaurentSeries z = cm_point(tr, disc, 72).z;
      std::int64_t last = -kNoLimit;
      for (int D = 1; D <= 4; ++D) {
        const ExpCoeffs e = exp_tower(z, D, {64, true});
        t.check(e.err_exponent > last);
        last = e.err_exponent;
        const LaurentSeries diff = e.alpha[2] - alpha3_by_recursion(e.alpha[0], e.alpha[1]);
        t.check(diff.is_zero() || diff.valuation() - e.alpha[2].valuation() >= e.err_exponent);
      }
      ++lattices;
    }
  }
  r.summary["lattices"] = lattices;
}

}  // namespace

SuiteResult run_suite(const std::string& name, FieldRef f, const VerifyOptions& opt) {
  SuiteResult r;
  r.name = canonical_suite(name);
  if (r.name == "all") throw PreconditionViolated("run each suite separately");
  const int deg = opt.max_deg >= 0 ? opt.max_deg : default_deg(r.name, f->q());
  r.summary = nlohmann::ordered_json::object();
  r.summary["q"] = f->q();
  if (r.name == "mertens") r.summary["n"] = opt.n;
  else if (r.name == "near-root") r.summary["seed"] = opt.seed;
  else r.summary["max_deg"] = deg;
  if (r.name == "cm-norms") cm_norms(f, deg, r);
  else if (r.name == "near-root") near_root(f, opt, r);
  else if (r.name == "near-root-count") near_root_count_suite(f, deg, r);
  else if (r.name == "mertens") mertens(f, opt.n, r);
  else if (r.name == "newton") newton_suite(f, deg, r);
  else exp_consistency(f, deg, r);
  return r;
}

nlohmann::ordered_json to_json(const SuiteResult& r) {
  return {{"suite", r.name}, {"pass", r.pass}, {"checked", r.checked}, {"failed", r.failed}, {"summary", r.summary}};
}

}  // namespace dcm

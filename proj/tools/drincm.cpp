#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "drincm/analytic.hpp"
#include "drincm/config.hpp"
#include "drincm/errors.hpp"
#include "drincm/forms.hpp"
#include "drincm/heights.hpp"
#include "drincm/irreducible.hpp"
#include "drincm/quadorder.hpp"
#include "drincm/report.hpp"
#include "drincm/verify.hpp"

using namespace dcm;

namespace {

struct Globals {
  int q = 0, p = 0, n = 1;
  std::string modulus, modulus2;
  std::int64_t prec = 40;
  int d_cap = 64;
  bool json = false, csv = false;
  std::string out;
  int threads = 1;
  std::uint64_t seed = 1;
};

struct DiscArgs {
  std::string delta, delta0, f0 = "1";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Config config_of(const Globals& g) {
  Config c;
  if (g.p != 0) {
    c.p = g.p;
    c.n = g.n;
    c.modulus_q = g.modulus;
    c.modulus_q2 = g.modulus2;
    if (c.modulus_q2.empty()) throw UsageError("--p requires --modulus2");
    if (c.n > 1 && c.modulus_q.empty()) throw UsageError("--n > 1 requires --modulus");
  } else {
    try {
      c = default_config(g.q == 0 ? 3 : g.q);
    } catch (const PreconditionViolated&) {
      throw UsageError("--q " + std::to_string(g.q) + " has no shipped configuration; give --p/--n/--modulus/--modulus2");
    }
  }
  c.prec = g.prec;
  c.d_cap = g.d_cap;
  c.threads = g.threads;
  c.seed = g.seed;
  return c;
}

ImagDiscriminant disc_of(FieldRef f, const DiscArgs& a) {
  if (!a.delta.empty()) {
    if (!a.delta0.empty()) throw UsageError("give either --delta or --delta0, not both");
    return discriminant_from_delta(parse_poly(f, a.delta));
  }
  if (a.delta0.empty()) throw UsageError("missing --delta or --delta0");
  return make_discriminant(parse_poly(f, a.f0), parse_poly(f, a.delta0));
}

void add_disc_flags(CLI::App* sub, DiscArgs& a) {
  sub->add_option("--delta", a.delta, "order discriminant delta = 4 f0^2 delta0");
  sub->add_option("--delta0", a.delta0, "fundamental discriminant");
  sub->add_option("--f0", a.f0, "conductor (monic)");
}

JOptions jopt_of(const Config& c) {
  JOptions o;
  o.d_cap = c.d_cap;
  return o;
}

std::string rat(const Rational& r) { return to_string(r); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CM singular moduli of rank-2 Drinfeld modules over F_q[t]"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--q", g.q, "field size (3, 5, 7, 9 use shipped moduli)");
  app.add_option("--p", g.p, "characteristic (with --modulus2)");
  app.add_option("--n", g.n, "degree of F_q over F_p");
  app.add_option("--modulus", g.modulus, "modulus of F_q over F_p, in x");
  app.add_option("--modulus2", g.modulus2, "modulus of F_q^2 over F_q, in y");
  app.add_option("--prec", g.prec, "series precision (s-digits)");
  app.add_option("--d-cap", g.d_cap, "tower degree cap");
  app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--csv", g.csv, "CSV output");
  app.add_option("--out", g.out, "write output to a file");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for randomized suites");

  DiscArgs da;
  auto* classify = app.add_subcommand("classify", "place type of infinity");
  add_disc_flags(classify, da);

  auto* forms = app.add_subcommand("forms", "reduced triples T_delta");
  add_disc_flags(forms, da);

  auto* jcmd = app.add_subcommand("j", "j-invariant of a CM point");
  add_disc_flags(jcmd, da);
  int index = 0;
  jcmd->add_option("--index", index, "triple index in T_delta")->check(CLI::NonNegativeNumber);

  auto* cp = app.add_subcommand("class-poly", "class polynomial H_delta");
  add_disc_flags(cp, da);
  std::size_t max_terms = 0;
  cp->add_option("--max-poly-terms", max_terms, "omit class polynomials with more nonzero terms (0: no limit)");

  auto* height = app.add_subcommand("height", "heights and bound comparison");
  add_disc_flags(height, da);
  double C_q = 0.0, O_q = 0.0;
  height->add_option("--C-q", C_q, "lower-bound constant");
  height->add_option("--O-q", O_q, "upper-bound constant");
  height->add_option("--max-poly-terms", max_terms, "omit class polynomials with more nonzero terms (0: no limit)");

  auto* scan_cmd = app.add_subcommand("scan", "unit scan over a discriminant grid");
  int max_d0 = 1, max_f0 = 0;
  bool no_symmetry = false;
  std::size_t scan_terms = 20000;
  scan_cmd->add_option("--max-deg-delta0", max_d0, "largest deg delta0");
  scan_cmd->add_option("--max-deg-f0", max_f0, "largest deg f0");
  scan_cmd->add_option("--C-q", C_q, "lower-bound constant");
  scan_cmd->add_option("--O-q", O_q, "upper-bound constant");
  scan_cmd->add_flag("--no-symmetry", no_symmetry, "compute every class polynomial directly");
  scan_cmd->add_option("--max-poly-terms", scan_terms, "omit class polynomials with more nonzero terms (0: no limit)");

  auto* verify = app.add_subcommand("verify", "property suites");
  std::string suite = "all";
  VerifyOptions vopt;
  verify->add_option("--suite", suite, "cm-norms, near-root, near-root-count, mertens, newton, exp-consistency, all");
  verify->add_option("--max-deg", vopt.max_deg, "degree bound of the grid");
  verify->add_option("--n", vopt.n, "Mertens range");
  verify->add_option("--points", vopt.points, "synthetic points per distance");

  auto* primes = app.add_subcommand("primes", "monic irreducibles");
  int pdeg = 4;
  bool list = false;
  primes->add_option("--deg", pdeg, "largest degree")->check(CLI::PositiveNumber);
  primes->add_flag("--list", list, "list the polynomials of degree --deg");

  // --n is both a global (field degree) and a verify option; the verify one wins inside the subcommand.
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::ostringstream out;
  try {
    if (g.json && g.csv) throw UsageError("--json and --csv are exclusive");
    const Config cfg = config_of(g);
    FieldRef f = make_field(cfg);

    if (classify->parsed()) {
      const ImagDiscriminant d = disc_of(f, da);
      if (g.json) out << nlohmann::ordered_json{{"delta0", to_string(d.delta0)}, {"place_type", to_string(d.place_type)}}.dump() << "\n";
      else out << to_string(d.place_type) << "\n";
    } else if (forms->parsed()) {
      const ImagDiscriminant d = disc_of(f, da);
      const auto T = enumerate_T(d);
      if (g.json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& t : T) arr.push_back({to_string(t.a), to_string(t.b), to_string(t.c)});
        out << nlohmann::ordered_json{{"delta", to_string(d.delta)}, {"triples", arr}}.dump() << "\n";
      } else {
        for (const auto& t : T) out << to_string(t) << "\n";
      }
    } else if (jcmd->parsed()) {
      const ImagDiscriminant d = disc_of(f, da);
      const auto T = enumerate_T(d);
      if (static_cast<std::size_t>(index) >= T.size())
        throw UsageError("--index " + std::to_string(index) + " out of range (|T| = " + std::to_string(T.size()) + ")");
      const JResult r = j_invariant(T[index], d, cfg.prec, jopt_of(cfg));
      const std::string logj = r.j.is_zero() ? "-inf" : rat(r.j.abs().log_q());
      if (g.json)
        out << nlohmann::ordered_json{{"triple", to_string(T[index])}, {"j", to_string(r.j)}, {"log_abs_j", logj},
                                      {"D", r.D}, {"rel", r.rel_used}}.dump()
            << "\n";
      else out << "j = " << to_string(r.j) << "\nlog_q|j| = " << logj << "\n";
    } else if (cp->parsed() || height->parsed()) {
      const ImagDiscriminant d = disc_of(f, da);
      ClassPolyPolicy pol;
      pol.jopt = jopt_of(cfg);
      const HeightReport h = bound_report(d, C_q, O_q, pol);
      const ClassPolynomial H = class_polynomial(d, pol);
      const ReportRow row = make_row(h, H, max_terms);
      if (g.json) {
        nlohmann::ordered_json j = to_json(row);
        j["prec_certificate"] = {{"guard", H.prec_certificate.guard}, {"max_rel", H.prec_certificate.max_rel},
                                 {"D", H.prec_certificate.D}, {"stability_checked", H.prec_certificate.stability_checked}};
        out << j.dump() << "\n";
      } else if (g.csv) {
        out << csv_header() << to_csv(row);
      } else if (cp->parsed()) {
        out << (row.class_poly ? to_string(H) : "digest " + row.class_poly_digest) << "\n";
      } else {
        out << "delta: " << row.delta << "\nplace_type: " << row.place_type << "\nd: " << row.d
            << "\nhJ: " << row.hJ << "\nhG: " << row.hG << "\nis_unit: " << (row.is_unit ? "true" : "false")
            << "\nlower_rhs: " << format_double(row.lower_rhs) << "\nupper_rhs: " << format_double(row.upper_rhs)
            << "\nslack: " << format_double(row.slack) << "\n";
      }
    } else if (scan_cmd->parsed()) {
      ScanConfig sc;
      sc.max_deg_delta0 = max_d0;
      sc.max_deg_f0 = max_f0;
      sc.C_q = C_q;
      sc.O_q = O_q;
      sc.policy.jopt = jopt_of(cfg);
      sc.use_symmetry = !no_symmetry;
      sc.threads = cfg.threads;
      const Report rep = make_report(cfg, scan(f, sc), scan_terms);
      if (g.json) out << to_json(rep).dump(1) << "\n";
      else if (g.csv) out << to_csv(rep);
      else {
        out << "delta0 | f0 | place | t_count | d | hJ | hG | unit | slack | status\n";
        for (const ReportRow& r : rep.rows)
          out << r.delta0 << " | " << r.f0 << " | " << r.place_type << " | " << r.t_count << " | " << r.d << " | " << r.hJ
              << " | " << r.hG << " | " << (r.is_unit ? "yes" : "no") << " | " << format_double(r.slack) << " | "
              << r.status << "\n";
        out << "unit_count: " << rep.unit_count << "\n";
      }
    } else if (verify->parsed()) {
      vopt.seed = cfg.seed;
      vopt.threads = cfg.threads;
      const std::string name = canonical_suite(suite);
      std::vector<std::string> names = name == "all" ? suite_names() : std::vector<std::string>{name};
      bool all_pass = true;
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const std::string& s : names) {
        const SuiteResult r = run_suite(s, f, vopt);
        all_pass = all_pass && r.pass;
        if (g.json) arr.push_back(to_json(r));
        else
          out << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (checked " << r.checked << ", failed " << r.failed
              << ") " << r.summary.dump() << "\n";
      }
      if (g.json) out << arr.dump() << "\n";
      if (!g.out.empty()) std::ofstream(g.out, std::ios::binary) << out.str();
      else std::cout << out.str();
      return all_pass ? 0 : 1;
    } else if (primes->parsed()) {
      if (list) {
        for (const PolyA& v : irreducibles_of_degree(f, pdeg)) out << to_string(v) << "\n";
      } else {
        for (int i = 1; i <= pdeg; ++i) out << i << " " << count_irreducibles(f->q(), i) << "\n";
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  if (!g.out.empty()) {
    std::ofstream file(g.out, std::ios::binary);
    file << out.str();
    if (!file) {
      std::cerr << "cannot write " << g.out << "\n";
      return 1;
    }
  } else {
    std::cout << out.str();
  }
  return 0;
}

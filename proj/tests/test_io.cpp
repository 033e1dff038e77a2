#include <doctest.h>

#include <algorithm>

#include "drincm/config.hpp"
#include "drincm/errors.hpp"
#include "drincm/report.hpp"
#include "drincm/verify.hpp"

using namespace dcm;

namespace {

Report small_report(int q, int threads) {
  const Config c = default_config(q);
  ScanConfig cfg;
  cfg.max_deg_delta0 = 2;
  cfg.max_deg_f0 = 1;
  cfg.threads = threads;
  return make_report(c, scan(make_field(c), cfg), 20000);
}

}  // namespace

TEST_CASE("shipped configurations") {
  for (int q : {3, 5, 7, 9}) {
    const Config c = default_config(q);
    CHECK(c.q() == q);
    CHECK(make_field(c)->q() == q);
  }
  CHECK_THROWS_AS(default_config(4), PreconditionViolated);
  CHECK_THROWS_AS(default_config(11), PreconditionViolated);
}

TEST_CASE("report JSON round trip") {
  const Report r = small_report(3, 1);
  REQUIRE(!r.rows.empty());
  const auto j = to_json(r);
  const Report back = report_from_json(nlohmann::ordered_json::parse(j.dump()));
  CHECK(back.rows == r.rows);
  CHECK(back.unit_count == r.unit_count);
  CHECK(to_json(back).dump() == j.dump());
  for (const char* key : {"p", "n", "modulus_q", "modulus_q2", "prec", "D_cap"}) CHECK(j["config"].contains(key));
}

TEST_CASE("CSV rows match the header") {
  const Report r = small_report(5, 2);
  const auto commas = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  const auto header = commas(csv_header());
  for (const ReportRow& row : r.rows) {
    std::string line = to_csv(row);
    if (!line.empty() && line.back() == '\n') line.pop_back();
    CHECK(commas(line) == header);
  }
}

TEST_CASE("digests and doubles") {
  FieldRef f = make_field(default_config(3));
  const std::vector<PolyA> a{parse_poly(f, "t"), parse_poly(f, "1")};
  const std::vector<PolyA> b{parse_poly(f, "t+1"), parse_poly(f, "1")};
  CHECK(poly_digest(a).size() == 16);
  CHECK(poly_digest(a) == poly_digest(a));
  CHECK(poly_digest(a) != poly_digest(b));
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(13.666010488516724) == "13.666010488516724");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("verify suites") {
  CHECK(canonical_suite("lemma5.3") == "cm-norms");
  CHECK(canonical_suite("prop4.6") == "near-root-count");
  CHECK(canonical_suite("mertens") == "mertens");
  CHECK_THROWS_AS(canonical_suite("nope"), PreconditionViolated);
  FieldRef f = make_field(default_config(3));
  VerifyOptions opt;
  opt.max_deg = 3;
  for (const std::string& name : suite_names()) {
    const SuiteResult r = run_suite(name, f, opt);
    CHECK_MESSAGE(r.pass, name);
    CHECK(r.checked > 0);
    CHECK(to_json(r)["pass"] == true);
  }
  for (const PolyA& d : admissible_deltas(f, 4, true)) {
    CHECK(d.deg() % 2 == 0);
    CHECK(!f->is_square_fq(d.lc()));
  }
}

#include "drincm/report.hpp"

#include <charconv>
#include <cstdio>

#include "drincm/forms.hpp"

namespace dcm {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string poly_digest(const std::vector<PolyA>& coeffs) {
  std::uint64_t h = 1469598103934665603ull;
  bool first = true;
  for (const PolyA& c : coeffs) {
    std::string s = (first ? "" : ";") + to_string(c);
    first = false;
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::optional<std::vector<std::string>> poly_texts(const std::vector<PolyA>& coeffs, std::size_t max_terms) {
  if (coeffs.empty()) return std::nullopt;
  std::size_t terms = 0;
  for (const PolyA& c : coeffs)
    for (Elem x : c.coeffs()) terms += x != 0;
  if (max_terms != 0 && terms > max_terms) return std::nullopt;
  std::vector<std::string> out;
  for (const PolyA& c : coeffs) out.push_back(to_string(c));
  return out;
}

void fill_disc(ReportRow& r, const ImagDiscriminant& d) {
  r.delta = to_string(d.delta);
  r.delta0 = to_string(d.delta0);
  r.f0 = to_string(d.f0);
  r.place_type = to_string(d.place_type);
}

}  // namespace

ReportRow make_row(const ScanRow& row, std::size_t max_terms) {
  ReportRow r;
  fill_disc(r, row.disc);
  r.t_count = row.t_count;
  r.d = row.d;
  r.class_poly = poly_texts(row.class_poly, max_terms);
  r.class_poly_digest = row.class_poly.empty() ? "" : poly_digest(row.class_poly);
  r.hJ = to_string(row.hJ);
  r.hG = to_string(row.hG);
  r.hJ_newton = to_string(row.hJ_newton);
  r.is_unit = row.is_unit;
  r.efactor_ok = row.efactor_ok;
  r.derived = row.derived;
  r.lower_rhs = row.lower_rhs;
  r.upper_rhs = row.upper_rhs;
  r.slack = row.slack;
  r.status = row.status;
  r.detail = row.detail;
  return r;
}

ReportRow make_row(const HeightReport& h, const ClassPolynomial& H, std::size_t max_terms) {
  ReportRow r;
  fill_disc(r, h.disc);
  r.t_count = static_cast<int>(enumerate_T(h.disc).size());
  r.d = h.d;
  r.class_poly = poly_texts(H.coeffs, max_terms);
  r.class_poly_digest = poly_digest(H.coeffs);
  r.hJ = to_string(h.hJ);
  r.hG = to_string(h.hG);
  r.hJ_newton = to_string(weil_height_newton(H));
  r.is_unit = h.is_unit;
  r.lower_rhs = h.lower_rhs;
  r.upper_rhs = h.upper_rhs;
  r.slack = h.slack;
  r.status = "ok";
  return r;
}

Report make_report(const Config& c, const ScanResult& res, std::size_t max_terms) {
  Report r;
  r.config = c;
  for (const ScanRow& row : res.rows) r.rows.push_back(make_row(row, max_terms));
  r.unit_count = res.unit_count;
  return r;
}

nlohmann::ordered_json to_json(const Config& c) {
  return {{"p", c.p},           {"n", c.n},         {"modulus_q", c.modulus_q}, {"modulus_q2", c.modulus_q2},
          {"prec", c.prec},     {"D_cap", c.d_cap}};
}

nlohmann::ordered_json to_json(const ReportRow& r) {
  nlohmann::ordered_json j;
  j["delta"] = r.delta;
  j["delta0"] = r.delta0;
  j["f0"] = r.f0;
  j["place_type"] = r.place_type;
  j["t_count"] = r.t_count;
  j["d"] = r.d;
  j["class_poly"] = r.class_poly ? nlohmann::ordered_json(*r.class_poly) : nlohmann::ordered_json(nullptr);
  j["class_poly_digest"] = r.class_poly_digest;
  j["hJ"] = r.hJ;
  j["hG"] = r.hG;
  j["hJ_newton"] = r.hJ_newton;
  j["is_unit"] = r.is_unit;
  j["efactor_ok"] = r.efactor_ok;
  j["derived"] = r.derived;
  j["lower_rhs"] = r.lower_rhs;
  j["upper_rhs"] = r.upper_rhs;
  j["slack"] = r.slack;
  j["status"] = r.status;
  j["detail"] = r.detail;
  return j;
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["config"] = to_json(r.config);
  j["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& row : r.rows) j["rows"].push_back(to_json(row));
  j["unit_count"] = r.unit_count;
  return j;
}

Report report_from_json(const nlohmann::ordered_json& j) {
  Report r;
  const auto& c = j.at("config");
  r.config.p = c.at("p").get<int>();
  r.config.n = c.at("n").get<int>();
  r.config.modulus_q = c.at("modulus_q").get<std::string>();
  r.config.modulus_q2 = c.at("modulus_q2").get<std::string>();
  r.config.prec = c.at("prec").get<std::int64_t>();
  r.config.d_cap = c.at("D_cap").get<int>();
  for (const auto& x : j.at("rows")) {
    ReportRow row;
    row.delta = x.at("delta").get<std::string>();
    row.delta0 = x.at("delta0").get<std::string>();
    row.f0 = x.at("f0").get<std::string>();
    row.place_type = x.at("place_type").get<std::string>();
    row.t_count = x.at("t_count").get<int>();
    row.d = x.at("d").get<int>();
    if (!x.at("class_poly").is_null()) row.class_poly = x.at("class_poly").get<std::vector<std::string>>();
    row.class_poly_digest = x.at("class_poly_digest").get<std::string>();
    row.hJ = x.at("hJ").get<std::string>();
    row.hG = x.at("hG").get<std::string>();
    row.hJ_newton = x.at("hJ_newton").get<std::string>();
    row.is_unit = x.at("is_unit").get<bool>();
    row.efactor_ok = x.at("efactor_ok").get<bool>();
    row.derived = x.at("derived").get<bool>();
    row.lower_rhs = x.at("lower_rhs").get<double>();
    row.upper_rhs = x.at("upper_rhs").get<double>();
    row.slack = x.at("slack").get<double>();
    row.status = x.at("status").get<std::string>();
    row.detail = x.at("detail").get<std::string>();
    r.rows.push_back(std::move(row));
  }
  r.unit_count = j.at("unit_count").get<int>();
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string csv_header() {
  return "delta,delta0,f0,place_type,t_count,d,class_poly,class_poly_digest,hJ,hG,hJ_newton,is_unit,efactor_ok,"
         "derived,lower_rhs,upper_rhs,slack,status,detail\n";
}

std::string to_csv(const ReportRow& r) {
  std::string poly;
  if (r.class_poly) {
    for (std::size_t k = 0; k < r.class_poly->size(); ++k) poly += (k ? ";" : "") + (*r.class_poly)[k];
  }
  const std::vector<std::string> cols = {r.delta,
                                         r.delta0,
                                         r.f0,
                                         r.place_type,
                                         std::to_string(r.t_count),
                                         std::to_string(r.d),
                                         poly,
                                         r.class_poly_digest,
                                         r.hJ,
                                         r.hG,
                                         r.hJ_newton,
                                         r.is_unit ? "true" : "false",
                                         r.efactor_ok ? "true" : "false",
                                         r.derived ? "true" : "false",
                                         format_double(r.lower_rhs),
                                         format_double(r.upper_rhs),
                                         format_double(r.slack),
                                         r.status,
                                         r.detail};
  std::string line;
  for (std::size_t k = 0; k < cols.size(); ++k) line += (k ? "," : "") + csv_field(cols[k]);
  return line + "\n";
}

std::string to_csv(const Report& r) {
  std::string out = csv_header();
  for (const ReportRow& row : r.rows) out += to_csv(row);
  return out;
}

}  // namespace dcm

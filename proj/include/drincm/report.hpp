#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "drincm/config.hpp"
#include "drincm/heights.hpp"

namespace dcm {

// Text form of one scan row, as serialized.
struct ReportRow {
  std::string delta, delta0, f0, place_type;
  int t_count = 0, d = 0;
  // X^0 first; absent when the polynomial exceeds the size limit.
  std::optional<std::vector<std::string>> class_poly;
  std::string class_poly_digest;
  std::string hJ, hG, hJ_newton;
  bool is_unit = false, efactor_ok = true, derived = false;
  double lower_rhs = 0.0, upper_rhs = 0.0, slack = 0.0;
  std::string status, detail;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Report {
  Config config;
  std::vector<ReportRow> rows;
  int unit_count = 0;
};

// FNV-1a of the coefficient texts joined by ';', 16 hex digits.
std::string poly_digest(const std::vector<PolyA>& coeffs);

// max_terms bounds the total number of nonzero coefficients printed per
// class polynomial; 0 prints everything.
ReportRow make_row(const ScanRow& row, std::size_t max_terms);
Report make_report(const Config& c, const ScanResult& r, std::size_t max_terms);
ReportRow make_row(const HeightReport& h, const ClassPolynomial& H, std::size_t max_terms);

nlohmann::ordered_json to_json(const Config& c);
nlohmann::ordered_json to_json(const ReportRow& r);
nlohmann::ordered_json to_json(const Report& r);
// Throws nlohmann::json exceptions on schema mismatch.
Report report_from_json(const nlohmann::ordered_json& j);

std::string csv_header();
std::string to_csv(const ReportRow& r);
std::string to_csv(const Report& r);

// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace dcm

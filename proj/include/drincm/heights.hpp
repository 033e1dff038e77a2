#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "drincm/analytic.hpp"
#include "drincm/forms.hpp"
#include "drincm/newton.hpp"
#include "drincm/quadorder.hpp"

namespace dcm {

struct ClassPolyPolicy {
  // Extra s-digits beyond the worst-case error propagation.
  std::int64_t guard = 8;
  JOptions jopt;
  // Recompute at doubled precision and doubled D and require identical output.
  bool verify_stability = true;
  // Use -sqrt(delta) for every CM point.
  bool other_branch = false;
};

struct PrecisionCertificate {
  std::int64_t guard = 0;       // certified s-digits past t^0 in every coefficient
  std::int64_t max_rel = 0;     // largest working precision used for a conjugate
  int D = 0;                    // largest tower degree used
  bool stability_checked = false;
};

// H(X) = sum coeffs[k] X^k, monic of degree d.
struct ClassPolynomial {
  std::vector<PolyA> coeffs;
  ImagDiscriminant disc;
  PrecisionCertificate prec_certificate;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

std::string to_string(const ClassPolynomial& H);

// One triple per lattice class, in T_delta order. The class polynomial has
// one root per entry.
std::vector<ReducedTriple> conjugate_triples(const ImagDiscriminant& disc);

// log_q|j(z)| for every conjugate triple, in order. A conjugate that
// vanishes to precision past t^0 is reported as nullopt (it has log+ = 0).
std::vector<std::optional<Rational>> conjugate_logs(const ImagDiscriminant& disc, const JOptions& opt = {});

// Throws RoundingFailure, PrecisionCapExceeded.
ClassPolynomial class_polynomial(const ImagDiscriminant& disc, const ClassPolyPolicy& policy = {});

// Rounds a series to A: keeps exponents that are nonpositive multiples of e
// with F_q coefficients. Throws RoundingFailure when any other term survives
// or the precision does not reach past t^0.
PolyA round_to_A(const LaurentSeries& x);

// H_{sigma(delta)} for sigma: t -> alpha t + beta, as sum alpha^(k-d) sigma(c_k) X^k.
std::vector<PolyA> transform_class_poly(const std::vector<PolyA>& H, Elem alpha, Elem beta);

// (1/d) sum log+|J_i| from the analytic conjugate valuations.
Rational weil_height(const std::vector<std::optional<Rational>>& logs);
Rational weil_height(const ImagDiscriminant& disc);
// The same from the Newton polygon of an exact class polynomial.
Rational weil_height_newton(const ClassPolynomial& H);
Rational graded_height(const Rational& hJ, int q);
Rational graded_height(const ImagDiscriminant& disc);

bool is_unit(const ClassPolynomial& H);

struct HeightReport {
  ImagDiscriminant disc;
  int d = 0;
  Rational hJ, hG;
  bool is_unit = false;
  double C_q = 0.0, O_q = 0.0;
  double lower_rhs = 0.0, upper_rhs = 0.0, slack = 0.0;
};

HeightReport bound_report(const ImagDiscriminant& disc, double C_q = 0.0, double O_q = 0.0,
                          const ClassPolyPolicy& policy = {});

// Rows of the unit scan.
struct ScanRow {
  ImagDiscriminant disc;
  int t_count = 0;  // |T_delta|; exceeds d when boundary triples share a lattice
  int d = 0;
  std::vector<PolyA> class_poly;
  // Analytic log|J_i| (nullopt: |J_i| < 1 with J_i vanishing to precision).
  std::vector<std::optional<Rational>> logs;
  Rational hJ, hG, hJ_newton;
  bool is_unit = false;
  double lower_rhs = 0.0, upper_rhs = 0.0, slack = 0.0;
  // "ok", or the error name of a failure; "derived" rows reuse a class
  // polynomial through t -> alpha t + beta.
  std::string status = "ok";
  std::string detail;
  bool derived = false;
  // Every e_{f0}(v) <= 9/(4l) and at most deg f0 prime factors.
  bool efactor_ok = true;
};

struct ScanConfig {
  int max_deg_delta0 = 1;
  int max_deg_f0 = 0;
  double C_q = 0.0, O_q = 0.0;
  ClassPolyPolicy policy{8, {}, false};
  bool use_symmetry = true;
  int threads = 1;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  int unit_count = 0;
};

// The discriminants of the grid in scan order: deg delta0 = 1..max, delta0
// squarefree with leading coefficient 1 or the least nonsquare, imaginary;
// then f0 monic of degree 0..max_deg_f0.
std::vector<ImagDiscriminant> scan_grid(FieldRef f, int max_deg_delta0, int max_deg_f0);

ScanResult scan(FieldRef f, const ScanConfig& cfg,
                const std::function<void(std::size_t, std::size_t)>& progress = nullptr);

}  // namespace dcm

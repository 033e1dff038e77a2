#pragma once

#include <array>
#include <cstdint>

#include "drincm/forms.hpp"
#include "drincm/series.hpp"

namespace dcm {

// Coefficients of e_L(x) = x + sum_k alpha_k x^(q^k), k = 1..3, for the
// truncated lattice L_D = {a z + b : deg a, deg b <= D}.
struct ExpCoeffs {
  std::array<LaurentSeries, 3> alpha;
  int trunc_deg = 0;
  // Certified absolute valuation bounds for alpha_k - alpha_k(full lattice).
  std::array<std::int64_t, 3> err_abs{};
  // min_k (err_abs[k] - v(alpha_k)): certified relative accuracy in s-digits.
  std::int64_t err_exponent = 0;
  int vectors_used = 0;  // basis vectors that changed alpha within precision
  int vectors_total = 0;
};

struct ExpOptions {
  // Relative working precision (s-digits) of every intermediate series.
  std::int64_t rel = 64;
  // Skip basis vectors whose contribution lies below working precision.
  bool early_stop = true;
};

// Throws DegenerateLattice when {t^i z, t^i} is not an orthogonal basis
// (z in k_inf to precision, or |z| < 1), ConsistencyFailure when a computed
// e_V(w) does not have the predicted absolute value.
ExpCoeffs exp_tower(const LaurentSeries& z, int D, const ExpOptions& opt = {});

// The tower for an arbitrary F_q-basis of a finite lattice, given as series
// sorted so that the basis is orthogonal with nondecreasing |w|.
ExpCoeffs exp_tower_basis(const std::vector<LaurentSeries>& basis, std::int64_t rel);

// Exponent coefficients from the functional equation alone: given alpha_1 and
// alpha_2 (hence g and Delta), alpha_3 = (g alpha_2^q + Delta alpha_1^(q^2)) / (t^(q^3) - t).
LaurentSeries alpha3_by_recursion(const LaurentSeries& alpha1, const LaurentSeries& alpha2);

struct DrinfeldCoeffs {
  LaurentSeries g, Delta, j;
  // a_3 (t^(q^3) - t) - g a_2^q - Delta a_1^(q^2), zero to precision.
  LaurentSeries residual;
};

// Throws DeltaZeroToPrecision, ConsistencyFailure.
DrinfeldCoeffs drinfeld_coeffs(const ExpCoeffs& exp);

struct JResult {
  LaurentSeries j;
  int D = 0;
  std::int64_t rel_used = 0;  // working precision of the final run
};

struct JOptions {
  int d_start = 4;
  int d_cap = 64;
  std::int64_t rel_cap = std::int64_t{1} << 22;
};

// j(z) with absolute precision at least `abs_prec` (s-units). z must carry
// enough digits for the working precision chosen; when it does not,
// InsufficientPrecision is raised. Throws PrecisionCapExceeded.
JResult j_of_point(const LaurentSeries& z, std::int64_t abs_prec, const JOptions& opt = {});
// sqrt(delta) shared by all CM points of one discriminant; grows on demand.
class SqrtCache {
 public:
  explicit SqrtCache(const ImagDiscriminant& disc) : disc_(disc) {}
  // sqrt(delta) with at least `rel` relative digits.
  const LaurentSeries& get(std::int64_t rel);

 private:
  ImagDiscriminant disc_;
  LaurentSeries root_;
};

// The same for the CM point of a triple; z is recomputed at the working precision.
JResult j_invariant(const ReducedTriple& t, const ImagDiscriminant& disc, std::int64_t abs_prec,
                    const JOptions& opt = {}, bool other_branch = false, SqrtCache* cache = nullptr);

// The automorphism of k_inf(sqrt(delta)) over k_inf: s -> -s when infinity
// ramifies, coefficientwise Frobenius when it is inert. It maps j(a, b, c)
// to j(a, -b, c).
LaurentSeries conjugate_over_kinf(const LaurentSeries& x);

struct NearRoot {
  AbsValue predicted_abs;
  LaurentSeries first_order;
};

// q^q |z - u|^(q+1) and t^q u^-2 (1 - u^(q-1))^-2 (z - u)^(q+1). Requires
// u outside F_q and |z - u| < q^-1 (PreconditionViolated).
NearRoot j_near_root(const LaurentSeries& z, Elem u);

}  // namespace dcm

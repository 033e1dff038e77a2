#pragma once

#include <map>
#include <vector>

#include "drincm/quadorder.hpp"
#include "drincm/series.hpp"

namespace dcm {

// (a, b, c) with b^2 - 4ac = delta, a monic, |b| < |a| <= |c|, gcd(a,b,c) = 1.
struct ReducedTriple {
  PolyA a, b, c;

  friend bool operator==(const ReducedTriple&, const ReducedTriple&) = default;
};

std::string to_string(const ReducedTriple& t);

// Precomputed square-root tables: for each monic a of degree <= max_deg_a,
// the b with deg b < deg a grouped by the residue b^2 mod a.
class TripleEnumerator {
 public:
  TripleEnumerator(FieldRef f, int max_deg_a);

  // Shared instance, built on first use.
  static const TripleEnumerator& get(FieldRef f, int max_deg_a);

  FieldRef field() const { return f_; }
  int max_deg_a() const { return max_deg_; }

  // T_delta in (deg a, a, b) order. Requires deg delta / 2 <= max_deg_a.
  std::vector<ReducedTriple> enumerate(const PolyA& delta) const;
  // Only the triples with deg a == k.
  std::vector<ReducedTriple> enumerate_deg(const PolyA& delta, int k) const;

 private:
  struct Block {
    PolyA a;
    std::vector<std::uint32_t> offsets;  // size q^deg a + 1
    std::vector<std::uint32_t> bs;       // b codes, ascending within a residue
    std::vector<char> coprime;           // gcd(a, b) = 1, aligned with bs
  };
  void scan(const PolyA& delta, int k, std::vector<ReducedTriple>& out) const;

  FieldRef f_;
  int max_deg_;
  std::vector<std::vector<Block>> by_deg_;
};

// Throws nothing for valid discriminants.
std::vector<ReducedTriple> enumerate_T(const ImagDiscriminant& disc);
int class_number(const ImagDiscriminant& disc);

// Partition of T (indices into enumerate_T order) into classes of homothetic
// lattices. Triples with deg a = deg c (inert case, |z| = 1) are identified
// along orbits of the torus z -> (alpha z + c0) / (z + alpha), c0 = lc(delta)/4,
// which fixes the common leading term of their CM points; each such orbit has
// q + 1 members. Throws ConsistencyFailure if an image leaves T.
std::vector<std::vector<std::size_t>> lattice_classes(const ImagDiscriminant& disc,
                                                      const std::vector<ReducedTriple>& T);
// Number of lattice classes, i.e. distinct singular moduli.
int conjugate_count(const ImagDiscriminant& disc);

// Checks the defining conditions of T_delta.
bool is_reduced_triple(const ReducedTriple& t, const PolyA& delta);

struct CMPoint {
  ReducedTriple triple;
  LaurentSeries z;
  ImagDiscriminant disc;
};

// z = (-b + sqrt(delta)) / (2a) with `rel` digits of relative precision
// (raised when too small to resolve |z|_A). Throws ConsistencyFailure when
// a z^2 + b z + c is not zero to precision.
CMPoint cm_point(const ReducedTriple& t, const ImagDiscriminant& disc, std::int64_t rel = 40);
// The same from a precomputed sqrt(delta).
CMPoint cm_point(const ReducedTriple& t, const ImagDiscriminant& disc, const LaurentSeries& sqrt_delta);

std::int64_t default_cm_rel(const ImagDiscriminant& disc, std::int64_t rel);

// z for every triple of T at the least precision that resolves |z|_A, one
// sqrt(delta) and one 1/(2a) per distinct a. No residual check.
std::vector<LaurentSeries> cm_points_low(const ImagDiscriminant& disc, const std::vector<ReducedTriple>& T);

struct PointMetrics {
  AbsValue abs, dist_A, dist_kinf;
  bool in_F = false;  // |z| = |z|_i >= 1
};

PointMetrics metrics(const LaurentSeries& z);
inline PointMetrics metrics(const CMPoint& p) { return metrics(p.z); }

// Number of triples in T_delta with |z - u| < |delta|^(-1/2); u must lie
// outside F_q (PreconditionViolated otherwise).
int near_root_count(const ImagDiscriminant& disc, Elem u);
// The same for every u in F_{q^2} \ F_q at once; only nonzero counts appear.
std::map<Elem, int> near_root_counts(const ImagDiscriminant& disc);

}  // namespace dcm

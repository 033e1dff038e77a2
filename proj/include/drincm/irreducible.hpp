#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "drincm/poly.hpp"

namespace dcm {

// All monic irreducibles of degree 1..max_deg, ordered by (degree, code).
std::vector<PolyA> monic_irreducibles(FieldRef f, int max_deg);
// The monic irreducibles of exact degree d, cached per field; the reference
// stays valid for the life of the process.
const std::vector<PolyA>& irreducibles_of_degree(FieldRef f, int d);

// Number of monic irreducibles of degree i over F_q, by the Moebius formula.
std::uint64_t count_irreducibles(int q, int i);

bool is_irreducible(const PolyA& f);
bool is_squarefree(const PolyA& f);

struct Factorization {
  Elem unit = 1;
  std::vector<std::pair<PolyA, int>> factors;  // monic irreducibles, ascending

  PolyA expand(FieldRef f) const;
};

// Trial division by monic irreducibles up to deg f / 2. Throws ZeroPolynomial.
Factorization factor(const PolyA& f);

struct SquarefreeSplit {
  PolyA delta0;  // squarefree, carries the unit of f
  PolyA g;       // monic, f = g^2 * delta0
};

SquarefreeSplit squarefree_decompose(const PolyA& f);

// Every monic polynomial of exact degree d, in code order.
std::vector<PolyA> monic_polys(FieldRef f, int d);

}  // namespace dcm

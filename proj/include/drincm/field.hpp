#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace dcm {

// Elements of F_{q^2} are stored as table indices. With F_q = F_p[x]/(m) and
// F_{q^2} = F_q[y]/(m2), an element c0 + c1*y has index idx(c0) + q*idx(c1),
// where idx(sum a_i x^i) = sum a_i p^i. Hence the subfield F_q is exactly the
// index range [0, q).
using Elem = std::uint16_t;

enum class Level { Fq, Fq2 };

// A tagged field element. An F_q element used as an F_{q^2} element must be
// re-tagged explicitly (see Field::widen).
struct FieldElem {
  Level level = Level::Fq;
  Elem idx = 0;

  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

class Field;
using FieldRef = const Field*;

// The field tower F_p ⊂ F_q ⊂ F_{q^2} with precomputed arithmetic tables.
// Instances are interned and live for the whole process, so FieldRef
// pointers never dangle and equal parameters give the identical object.
class Field {
 public:
  // modulus_q: coefficients over F_p, constant term first, degree n.
  // modulus_q2: coefficients over F_q (as F_q indices), degree 2.
  static FieldRef make(int p, int n, const std::vector<int>& modulus_q,
                       const std::vector<Elem>& modulus_q2);
  // Text form: modulus_q in variable x, modulus_q2 in variable y with
  // coefficients written in x. For n == 1 an empty modulus_q means "x".
  static FieldRef make(int p, int n, const std::string& modulus_q,
                       const std::string& modulus_q2);

  int p() const { return p_; }
  int n() const { return n_; }
  int q() const { return q_; }
  int q2() const { return q2_; }

  const std::vector<int>& modulus_q() const { return mod_q_; }
  const std::vector<Elem>& modulus_q2() const { return mod_q2_; }

  Elem add(Elem a, Elem b) const { return add_[a * q2_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q2_ + neg_[b]]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q2_ + b]; }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;
  // a -> a^q, the generator of Gal(F_{q^2}/F_q).
  Elem frob(Elem a) const { return frob_[a]; }
  Elem from_int(long long v) const;
  Elem one() const { return 1; }
  Elem gen_x() const { return x_; }
  Elem gen_y() const { return static_cast<Elem>(q_); }

  bool in_fq(Elem a) const { return a < q_; }
  // Components over the F_q-basis {1, y}.
  Elem comp0(Elem a) const { return static_cast<Elem>(a % q_); }
  Elem comp1(Elem a) const { return static_cast<Elem>(a / q_); }
  Elem combine(Elem c0, Elem c1) const { return static_cast<Elem>(c0 + q_ * c1); }

  // Coordinates over F_p in the tower basis (1, x, .., x^{n-1}, y, xy, ..).
  std::vector<int> coords(Elem a) const;
  Elem from_coords(const std::vector<int>& c) const;

  // Euler criterion in F_q. Throws ZeroArgument for a == 0.
  bool is_square_fq(Elem a) const;
  // A square root in F_{q^2} of an F_q element; of the two roots, the one
  // with the lexicographically smaller coordinate vector.
  Elem sqrt_fq2(Elem a) const;
  // Canonical square root of any square of F_{q^2}; throws if a is a
  // non-square.
  Elem sqrt(Elem a) const;
  bool is_square(Elem a) const { return a == 0 || sqrt_[a] != kNoRoot; }
  // Smallest non-square of F_q (by index).
  Elem nonsquare_fq() const { return nonsquare_; }

  FieldElem widen(FieldElem a) const { return {Level::Fq2, a.idx}; }

  std::string format(Elem a) const;
  // Parses an element written in x (and y); throws ParseError.
  Elem parse(const std::string& s) const;

  bool operator==(const Field& o) const { return this == &o; }

 private:
  Field(int p, int n, std::vector<int> mod_q, std::vector<Elem> mod_q2);
  void build();

  static constexpr Elem kNoRoot = 0xffff;

  int p_, n_, q_, q2_;
  std::vector<int> mod_q_;
  std::vector<Elem> mod_q2_;
  Elem x_ = 0;
  Elem nonsquare_ = 0;
  std::vector<Elem> add_, mul_, neg_, inv_, frob_, sqrt_;
};

bool is_prime(long long n);

}  // namespace dcm

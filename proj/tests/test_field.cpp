#include <doctest.h>

#include <set>

#include "drincm/errors.hpp"
#include "drincm/field.hpp"

using namespace dcm;

namespace {

FieldRef f9() { return Field::make(3, 2, "x^2+1", "y^2-(x+1)"); }

std::vector<FieldRef> small_fields() {
  return {Field::make(3, 1, "", "y^2+1"), Field::make(5, 1, "", "y^2+2"), Field::make(7, 1, "", "y^2+1"), f9(),
          Field::make(11, 1, "", "y^2+1")};
}

}  // namespace

TEST_CASE("interning gives one object per parameter set") {
  CHECK(Field::make(3, 1, "", "y^2+1") == Field::make(3, 1, std::vector<int>{0, 1}, std::vector<Elem>{1, 0, 1}));
  CHECK(Field::make(5, 1, "", "y^2+2") != Field::make(5, 1, "", "y^2+3"));
}

TEST_CASE("field axioms hold on the tables") {
  for (FieldRef f : small_fields()) {
    const int n = f->q2();
    CAPTURE(f->q());
    int units = 0;
    for (int a = 0; a < n; ++a) {
      Elem A = static_cast<Elem>(a);
      CHECK(f->add(A, f->neg(A)) == 0);
      if (a) {
        CHECK(f->mul(A, f->inv(A)) == 1);
        ++units;
      }
      for (int b = 0; b < n; b += 3) {
        Elem B = static_cast<Elem>(b);
        CHECK(f->mul(A, B) == f->mul(B, A));
        for (int c = 1; c < n; c += 7) {
          Elem C = static_cast<Elem>(c);
          CHECK(f->mul(A, f->add(B, C)) == f->add(f->mul(A, B), f->mul(A, C)));
          CHECK(f->mul(A, f->mul(B, C)) == f->mul(f->mul(A, B), C));
        }
      }
    }
    CHECK(units == n - 1);
  }
}

TEST_CASE("F_q is the index range [0, q) and closed under the operations") {
  for (FieldRef f : small_fields()) {
    const int q = f->q();
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        CHECK(f->in_fq(f->add(a, b)));
        CHECK(f->in_fq(f->mul(a, b)));
        CHECK(f->frob(static_cast<Elem>(a)) == a);
      }
    CHECK_FALSE(f->in_fq(f->gen_y()));
  }
}

TEST_CASE("frobenius is the power map a -> a^q and an involution") {
  for (FieldRef f : small_fields())
    for (int a = 0; a < f->q2(); ++a) {
      Elem A = static_cast<Elem>(a);
      CHECK(f->frob(A) == f->pow(A, f->q()));
      CHECK(f->frob(f->frob(A)) == A);
    }
}

TEST_CASE("x + 1 is a non-square in F_9") {
  FieldRef f = f9();
  const Elem x1 = f->add(f->gen_x(), 1);
  CHECK_FALSE(f->is_square_fq(x1));
  // exhaustive check over F_9
  bool found = false;
  for (int a = 0; a < 9; ++a) found |= f->mul(a, a) == x1;
  CHECK_FALSE(found);
}

TEST_CASE("is_square_fq agrees with exhaustive search") {
  for (FieldRef f : small_fields()) {
    std::set<Elem> squares;
    for (int a = 1; a < f->q(); ++a) squares.insert(f->mul(a, a));
    for (int a = 1; a < f->q(); ++a) CHECK(f->is_square_fq(static_cast<Elem>(a)) == squares.count(a));
    CHECK_THROWS_AS(f->is_square_fq(0), ZeroArgument);
    CHECK_THROWS_AS(f->is_square_fq(f->gen_y()), FieldMismatch);
  }
}

TEST_CASE("canonical square root is the lexicographically smaller root") {
  for (FieldRef f : small_fields()) {
    for (int a = 1; a < f->q2(); ++a) {
      std::vector<Elem> roots;
      for (int r = 0; r < f->q2(); ++r)
        if (f->mul(r, r) == a) roots.push_back(static_cast<Elem>(r));
      if (roots.empty()) {
        CHECK_FALSE(f->is_square(static_cast<Elem>(a)));
        continue;
      }
      REQUIRE(roots.size() == 2);
      Elem want = f->coords(roots[0]) < f->coords(roots[1]) ? roots[0] : roots[1];
      CHECK(f->sqrt(static_cast<Elem>(a)) == want);
      if (a < f->q()) CHECK(f->sqrt_fq2(static_cast<Elem>(a)) == want);
    }
    // every F_q element has a root in F_{q^2}
    for (int a = 1; a < f->q(); ++a) CHECK(f->is_square(static_cast<Elem>(a)));
  }
}

TEST_CASE("format and parse round trip") {
  for (FieldRef f : small_fields())
    for (int a = 0; a < f->q2(); ++a) CHECK(f->parse(f->format(static_cast<Elem>(a))) == a);
  FieldRef f = f9();
  CHECK(f->format(f->add(f->gen_x(), 1)) == "x+1");
  CHECK(f->format(f->gen_y()) == "y");
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Field::make(4, 1, "", "y^2+1"), CompositeP);
  CHECK_THROWS_AS(Field::make(3, 1, "", "y^2-1"), ReducibleModulus);
  CHECK_THROWS_AS(Field::make(3, 2, "x^2-1", "y^2+1"), ReducibleModulus);
  CHECK_THROWS_AS(Field::make(37, 1, "", "y^2+2"), FieldTooLarge);
  CHECK_THROWS_AS(Field::make(3, 1, "", "y^2+1")->inv(0), ZeroArgument);
}

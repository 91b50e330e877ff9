#include <doctest.h>

#include "u21/cyclotomic.hpp"

using namespace u21;

TEST_CASE("rational arithmetic") {
  CycScalar a(mpq_class(2, 3)), b(mpq_class(-1, 6));
  CHECK(a + b == CycScalar(mpq_class(1, 2)));
  CHECK(a * b == CycScalar(mpq_class(-1, 9)));
  CHECK((a / b) == CycScalar(-4));
  CHECK(a.is_rational());
  CHECK(a.str() == "2/3");
  CHECK_THROWS_AS(CycScalar(0).inverse(), DomainError);
}

TEST_CASE("roots of unity satisfy x^m = 1 exactly") {
  for (unsigned m : {2u, 3u, 4u, 5u, 6u, 12u}) {
    CycScalar z = CycScalar::root_of_unity(m);
    CHECK(z.pow(m) == CycScalar(1));
    if (m > 1) CHECK(z != CycScalar(1));
    CHECK(z * z.inverse() == CycScalar(1));
  }
}

TEST_CASE("mixed orders promote to the compositum") {
  CycScalar z4 = CycScalar::root_of_unity(4);
  CycScalar z3 = CycScalar::root_of_unity(3);
  CycScalar w = z4 * z3;   // a primitive 12th root
  CHECK(w.pow(12) == CycScalar(1));
  CHECK(w.pow(6) == CycScalar(-1));
  // zeta_6^2 = zeta_3
  CHECK(CycScalar::root_of_unity(6).pow(2) == z3);
  // zeta_4^2 = -1 collapses to a rational
  CHECK(z4 * z4 == CycScalar(-1));
  CHECK((z4 * z4).is_rational());
}

TEST_CASE("full character sums vanish") {
  for (unsigned m : {3u, 5u, 7u}) {
    CycScalar s(0);
    for (unsigned k = 0; k < m; ++k) s += CycScalar::root_of_unity(m, k);
    CHECK(s.is_zero());
  }
}

TEST_CASE("geometric identities in Q(zeta_5)") {
  CycScalar z = CycScalar::root_of_unity(5);
  CycScalar lhs = (CycScalar(1) - z.pow(3)) / (CycScalar(1) - z);
  CycScalar rhs = CycScalar(1) + z + z * z;
  CHECK(lhs == rhs);
}

TEST_CASE("rational literal parsing") {
  CHECK(parse_rational("-21/2") == mpq_class(-21, 2));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("x"), DomainError);
  CHECK(rational_pow(mpq_class(3), -2) == mpq_class(1, 9));
}

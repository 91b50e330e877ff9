#include <doctest.h>

#include "u21/padic.hpp"
#include "u21/suites.hpp"

using namespace u21;

TEST_CASE("context construction") {
  CHECK(context_new(3)->eps == 2);
  CHECK(context_new(5)->eps == 2);
  CHECK(context_new(7)->eps == 3);
  CHECK_THROWS_AS(context_new(2), DomainError);
  CHECK_THROWS_AS(context_new(15), DomainError);
  CHECK_THROWS_AS(context_new(3, 2), DomainError);
}

TEST_CASE("local element arithmetic tracks valuation and cancellation") {
  Ctx ctx = context_new(3);
  LocalElem x = LocalElem::from_rational(ctx, mpq_class(5, 2));
  LocalElem y = LocalElem::from_int(ctx, 4);
  CHECK((x * y).val() == 0);
  CHECK(equal_at_precision(x * y, LocalElem::from_int(ctx, 10)));
  CHECK(equal_at_precision(x * x.inverse(), LocalElem::from_int(ctx, 1)));

  // 1 + 2 = 3 gains a digit of valuation and sheds one of precision
  LocalElem three = LocalElem::from_int(ctx, 1) + LocalElem::from_int(ctx, 2);
  CHECK(three.val() == 1);
  CHECK(three.prec() == ctx->M - 1);

  // x - x cancels every digit: an inexact zero that refuses val()
  LocalElem z = x - x;
  CHECK(z.is_zero_at_precision());
  CHECK_FALSE(z.is_exact_zero());
  CHECK_THROWS_AS(z.val(), PrecisionError);
  CHECK_THROWS_AS(z.inverse(), PrecisionError);
  CHECK(z.has_val_at_least(3));
  CHECK_THROWS_AS(z.has_val_at_least(1000), PrecisionError);

  CHECK_THROWS_AS(LocalElem::zero(ctx).inverse(), DomainError);
  CHECK_THROWS_AS(LocalElem::zero(ctx).val(), DomainError);

  // sums across a valuation gap wider than the precision window: the far
  // summand is invisible at the result's precision
  LocalElem lo = LocalElem::from_int(ctx, 2).scale_by_pi_power(-10);
  LocalElem hi = LocalElem::from_int(ctx, 7).scale_by_pi_power(20);
  LocalElem s = lo + hi;
  CHECK(s.val() == -10);
  CHECK(equal_at_precision(s, lo));
}

TEST_CASE("quadratic extension: conjugation, norm, trace, valuation") {
  Ctx ctx = context_new(3);
  ExtElem x = ExtElem::from_pair(ctx, 1, 1);  // 1 + sqrt(eps), eps = 2
  CHECK(equal_at_precision(x.conj(), ExtElem::from_pair(ctx, 1, -1)));
  CHECK(equal_at_precision(x.conj().conj(), x));
  CHECK(equal_at_precision(x.norm(), LocalElem::from_rational(ctx, -1)));
  CHECK(equal_at_precision(x.trace(), LocalElem::from_int(ctx, 2)));
  CHECK(x.norm().ctx());  // norm lands in F by construction

  // val(pi^2 (3 + sqrt(eps))) = 2 since val(3 + sqrt(eps)) = min(1, 0) = 0
  ExtElem y = ExtElem::from_pair(ctx, 3, 1).scale_by_pi_power(2);
  CHECK(y.val() == 2);
  CHECK(y.abs_value() == mpq_class(1, 81));  // q^{-2*2} = 3^{-4}

  CHECK(equal_at_precision(x * x.inverse(), ExtElem::one(ctx)));
}

TEST_CASE("norm stays a unit thanks to eps being a non-residue") {
  Ctx ctx = context_new(5);
  RandomSource rng(11);
  for (int i = 0; i < 50; ++i) {
    ExtElem x = rng.ext_unit(ctx, 0, 0);
    CHECK(x.norm().val() == 0);
  }
}

TEST_CASE("residue transversals") {
  Ctx ctx = context_new(3);
  auto tf = residue_transversal(ctx, Field::F, -2, -1);
  REQUIRE(tf.size() == 3);
  CHECK(tf[0].is_exact_zero());
  CHECK(tf[1].val() == -2);
  auto te = residue_transversal(ctx, Field::E, 0, 1);
  CHECK(te.size() == 9);
  auto joint = residue_transversal(ctx, Field::E, -1, 0).size() *
               residue_transversal(ctx, Field::F, -2, 0).size();
  CHECK(joint == 81);  // the q^4 coset count
  CHECK_THROWS_AS(residue_transversal(ctx, Field::F, 1, 1), DomainError);
}

TEST_CASE("additive character sums") {
  for (long p : {3L, 5L, 7L}) {
    Ctx ctx = context_new(p);
    CycScalar s = additive_char_sum(ctx, -1);
    CHECK(s.is_zero());
  }
  Ctx ctx = context_new(3);
  CHECK(additive_char_sum(ctx, 0) == CycScalar(1));
  CHECK_THROWS_AS(additive_char_sum(ctx, -2), DomainError);
}

TEST_CASE("residue extraction") {
  Ctx ctx = context_new(5);
  LocalElem x = LocalElem::from_int(ctx, 12);
  CHECK(x.residue(1) == 2);
  CHECK(x.residue(2) == 12);
  CHECK_THROWS_AS(LocalElem::pi_pow(ctx, -1).residue(1), DomainError);
}

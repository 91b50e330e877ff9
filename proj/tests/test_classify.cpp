#include <doctest.h>

#include "u21/classify.hpp"
#include "u21/suites.hpp"

using namespace u21;

namespace {
ParamScalar pq(long p) { return ParamScalar(CycScalar(p)); }
}  // namespace

TEST_CASE("case table at q = 3") {
  ParamScalar q = pq(3);
  ZetaRational le = l_factor_trivial();

  ReprInvariants st = invariants(ReprSpec::steinberg(), q);
  CHECK(st.N == 2);
  CHECK(st.L == l_factor_unramified(ParamScalar(CycScalar(mpq_class(1, 9)))));
  CHECK(st.epsilon == ZetaRational::monomial(ParamScalar(CycScalar(9)), 2));

  ReprInvariants r3 = invariants(ReprSpec::ru3(1), q);
  CHECK(r3.N == 1);
  CHECK(r3.L == le * le);
  CHECK(r3.epsilon == ZetaRational::monomial(pq(3), 1));

  ReprInvariants ups = invariants(ReprSpec::unramified_ps(2, 3), q);
  CHECK(ups.N == 0);
  CHECK(ups.L == l_factor_unramified(ParamScalar(CycScalar(2))) *
                     l_factor_unramified(ParamScalar(CycScalar(mpq_class(1, 2)))) *
                     le);
  CHECK(ups.epsilon == ZetaRational::one());

  ReprInvariants r2 = invariants(ReprSpec::ru2(0), q);
  CHECK(r2.N == 1);
  CHECK(r2.L ==
        l_factor_unramified(ParamScalar(CycScalar(mpq_class(-1, 3)))) * le);

  ReprInvariants r2ii = invariants(ReprSpec::ru2(2), q);
  CHECK(r2ii.N == 3);
  CHECK(r2ii.L ==
        l_factor_unramified(ParamScalar(CycScalar(mpq_class(-1, 3)))));

  ReprInvariants sc = invariants(ReprSpec::ramified_or_supercuspidal(false, 2),
                                 q);
  CHECK(sc.N == 2);
  CHECK(sc.L == ZetaRational::one());
  ReprInvariants sc2 = invariants(ReprSpec::ramified_or_supercuspidal(true, 3),
                                  q);
  CHECK(sc2.L == le);
}

TEST_CASE("constructors reject reducible parameter values") {
  CHECK_THROWS_AS(ReprSpec::unramified_ps(mpq_class(1, 9), 3), DomainError);
  CHECK_THROWS_AS(ReprSpec::unramified_ps(9, 3), DomainError);
  CHECK_THROWS_AS(ReprSpec::unramified_ps(mpq_class(-1, 3), 3), DomainError);
  CHECK_THROWS_AS(ReprSpec::unramified_ps(-3, 3), DomainError);
  CHECK_THROWS_AS(ReprSpec::unramified_ps(0, 3), DomainError);
  CHECK_NOTHROW(ReprSpec::unramified_ps(1, 3));  // mu2 trivial: irreducible
  CHECK_THROWS_AS(ReprSpec::irred_ps_unram_mu2(1, 3, 1, 1), DomainError);
  CHECK_THROWS_AS(ReprSpec::ru3(0), DomainError);
}

TEST_CASE("estimates hold across the table") {
  for (long p : {3L, 5L}) {
    ParamScalar q = pq(p);
    for (const ReprSpec& s :
         {ReprSpec::unramified_ps(2, p), ReprSpec::steinberg(),
          ReprSpec::ru2(0), ReprSpec::ru2(1), ReprSpec::ru3(1),
          ReprSpec::irred_ps_unram_mu2(2, p, 1, 1),
          ReprSpec::ramified_or_supercuspidal(true, 2)}) {
      CHECK(check_estimates(s, q));
      ReprInvariants inv = invariants(s, q);
      CHECK(inv.epsilon.eval_at(CycScalar(mpq_class(1, p))) == CycScalar(1));
    }
  }
}

TEST_CASE("conductor_of_mu2") {
  Ctx ctx = context_new(3);
  CHECK(conductor_of_mu2(CharacterMu2::trivial()) == 0);
  CHECK(conductor_of_mu2(CharacterMu2::residue_char(ctx, 4)) == 1);
  CHECK(conductor_of_mu2(CharacterMu2::residue_char(ctx, 2)) == 1);
}

TEST_CASE("identical configurations give byte-identical report bodies") {
  RunConfig cfg;
  cfg.p = 3;
  cfg.seed = 11;
  cfg.samples = 20;
  cfg.suites = {"monomial", "estimates"};
  Report r1 = run_verification(cfg);
  Report r2 = run_verification(cfg);
  CHECK(r1.failed() == 0);
  CHECK(r1.body() == r2.body());
}

TEST_CASE("cross-check pipelines at p = 3") {
  CrossCheckReport r2 = cross_check(ReprSpec::ru2(0), 3);
  CHECK(r2.ok);
  CrossCheckReport r3 = cross_check(ReprSpec::ru3(1), 3);
  CHECK(r3.ok);
  CrossCheckReport ir = cross_check(ReprSpec::irred_ps_unram_mu2(2, 3, 1, 1),
                                    3);
  CHECK(ir.ok);
  CHECK_THROWS_AS(cross_check(ReprSpec::steinberg(), 3), DomainError);
}

#include <doctest.h>

#include "u21/induced.hpp"
#include "u21/suites.hpp"

using namespace u21;

namespace {

InducedParams ru2i(const Ctx& ctx) {
  InducedParams p;
  p.ctx = ctx;
  p.a = CycScalar(mpq_class(-1, ctx->p));
  p.mu2 = CharacterMu2::trivial();
  p.level = 1;
  p.mode = SupportMode::Partial;
  return p;
}

InducedParams ru3(const Ctx& ctx) {
  InducedParams p;
  p.ctx = ctx;
  p.a = CycScalar(1);
  p.mu2 = CharacterMu2::residue_char(ctx, 2);
  p.level = 1;
  p.mode = SupportMode::Supported;
  return p;
}

CycScalar q2(const Ctx& ctx) { return CycScalar(mpq_class(ctx->p * ctx->p)); }

}  // namespace

TEST_CASE("mu2 residue characters") {
  Ctx ctx = context_new(3);
  CHECK(CharacterMu2::trivial().conductor() == 0);
  CharacterMu2 chi = CharacterMu2::residue_char(ctx, 4);  // q + 1 = 4
  CHECK(chi.conductor() == 1);
  CHECK(chi.order() == 4);
  CHECK(chi.value(ExtElem::one(ctx)) == CycScalar(1));
  // -1 is the unique order-2 element of the norm-one residue group
  CHECK(chi.value(-ExtElem::one(ctx)) == CycScalar(-1));
  // multiplicativity on random norm-one elements
  RandomSource rng(3);
  for (int i = 0; i < 30; ++i) {
    ExtElem b1 = rng.norm_one(ctx), b2 = rng.norm_one(ctx);
    CHECK(chi.value(b1 * b2) == chi.value(b1) * chi.value(b2));
  }
  // trivial on E^1 cap (1 + p_E)
  for (int i = 0; i < 10; ++i)
    CHECK(chi.value(rng.norm_one_level(ctx, 1)) == CycScalar(1));
  CHECK_THROWS_AS(CharacterMu2::residue_char(ctx, 3), DomainError);
  CHECK_THROWS_AS(CharacterMu2::residue_char(ctx, 4, 4), DomainError);
}

TEST_CASE("parameter validation") {
  Ctx ctx = context_new(3);
  InducedParams p = ru2i(ctx);
  CHECK_NOTHROW(p.validate());
  p.a = CycScalar(0);
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.a = CycScalar(-3);  // a = -q: the degenerate locus
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = ru3(ctx);
  CHECK_NOTHROW(p.validate());
  p.level = 0;
  CHECK_THROWS_AS(newform(p), DomainError);
}

TEST_CASE("base evaluator: transformation law values") {
  Ctx ctx = context_new(3);
  InducedFn f = newform(ru2i(ctx));
  GroupElt e = identity_elt(ctx);
  CHECK(f.eval(e).scalar() == CycScalar(1));
  // f(zeta) = q^{-2} a, f(zeta^{-1}) = q^2 a^{-1}
  CycScalar a = ru2i(ctx).a;
  CHECK(f.eval(zeta_elt(ctx)).scalar() == CycScalar(mpq_class(1, 9)) * a);
  CHECK(f.eval(zeta_pow(ctx, -1)).scalar() == q2(ctx) * a.inverse());
  // left transformation law on random Borel elements
  RandomSource rng(7);
  for (int i = 0; i < 200; ++i) {
    BorelElt b = rng.borel(ctx);
    GroupElt g = rng.kn_elt(ctx, 1);
    EvalResult lhs = f.eval(GroupElt::trusted(b.elt().mat() * g.mat()));
    EvalResult rhs = f.eval(g);
    long ev = b.alpha_val();
    CycScalar factor = CycScalar(b.delta_half()) * a.pow(ev) *
                       f.params.mu2.value(b.beta());
    CHECK(lhs.scalar() == factor * rhs.scalar());
  }
}

TEST_CASE("theta-raise values (trivial mu2)") {
  for (long p : {3L, 5L}) {
    Ctx ctx = context_new(p);
    InducedFn tf = apply_theta_prime(newform(ru2i(ctx)));
    CycScalar a = CycScalar(mpq_class(-1, p));
    // value at the identity: q^2 a^{-1} + q
    CHECK(tf.eval(identity_elt(ctx)).scalar() ==
          q2(ctx) * a.inverse() + CycScalar(p));
    // value at gamma_1: q + 1
    CHECK(tf.eval(gamma_elt(ctx, 1)).scalar() == CycScalar(p + 1));
  }
}

TEST_CASE("theta-raise vanishes at gamma_N for nontrivial mu2") {
  for (long p : {3L, 5L}) {
    Ctx ctx = context_new(p);
    InducedFn tf = apply_theta_prime(newform(ru3(ctx)));
    EvalResult r = tf.eval(gamma_elt(ctx, 1));
    CHECK(r.is_scalar());
    CHECK(r.scalar().is_zero());
  }
}

TEST_CASE("right invariance of the raised function") {
  Ctx ctx = context_new(3);
  InducedFn tf = apply_theta_prime(newform(ru2i(ctx)));
  RandomSource rng(13);
  for (int i = 0; i < 200; ++i) {
    GroupElt k = rng.kn_elt(ctx, 2);
    GroupElt at = gamma_elt(ctx, 1);
    CHECK(tf.eval(GroupElt::trusted(at.mat() * k.mat())) == tf.eval(at));
    CHECK(tf.eval(k).scalar() == tf.eval(identity_elt(ctx)).scalar());
  }
}

TEST_CASE("theta and eigenvalue identities across a range of a-values") {
  Ctx ctx = context_new(3);
  for (mpq_class a :
       {mpq_class(2), mpq_class(1, 2), mpq_class(-2), mpq_class(5, 3)}) {
    InducedParams p;
    p.ctx = ctx;
    p.a = CycScalar(a);
    p.mu2 = CharacterMu2::residue_char(ctx, 2);
    p.level = 1;
    p.mode = SupportMode::Supported;
    CAPTURE(a.get_str());
    CHECK(verify_lemma(LemmaId::ThetaAtIdentity, p).ok);
    CHECK(verify_lemma(LemmaId::EigenRelation, p).ok);
    CHECK(verify_lemma(LemmaId::NuFromRatio, p).ok);
  }
}

TEST_CASE("eigen pairs: frozen values at p = 3 and p = 5") {
  {
    Ctx ctx = context_new(3);
    auto [nu, lambda] = eigen_pair(ru2i(ctx));
    CHECK(nu == CycScalar(24));
    CHECK(lambda == CycScalar(32));
    auto [nu3, lambda3] = eigen_pair(ru3(ctx));
    CHECK(nu3 == CycScalar(36));
    CHECK(lambda3 == CycScalar(48));
  }
  {
    Ctx ctx = context_new(5);
    auto [nu, lambda] = eigen_pair(ru2i(ctx));
    CHECK(nu == CycScalar(120));
    CHECK(lambda == CycScalar(144));
    auto [nu3, lambda3] = eigen_pair(ru3(ctx));
    CHECK(nu3 == CycScalar(150));  // q^2 + q^3
    CHECK(lambda3 == CycScalar(180));  // q (1 + q)^2
  }
}

TEST_CASE("delta-theta consistency with the priming sum") {
  // lambda f(e) = (theta' f)'(e) + a (theta' f)(e): the q^2 tail terms each
  // contribute q^{-2} a (theta' f)(e).
  Ctx ctx = context_new(3);
  InducedParams p = ru2i(ctx);
  InducedFn f = newform(p);
  InducedFn tf = apply_theta_prime(f);
  InducedFn primed = apply_prime(tf);
  GroupElt e = identity_elt(ctx);
  CycScalar lambda = apply_delta_theta(f).eval(e).scalar();
  CHECK(lambda ==
        primed.eval(e).scalar() + p.a * tf.eval(e).scalar());
}

TEST_CASE("operator translate sums have the displayed shapes") {
  Ctx ctx = context_new(3);
  InducedFn f = newform(ru2i(ctx));
  InducedFn tf = apply_theta_prime(f);
  CHECK(tf.translates.size() == 4);  // 1 + q
  InducedFn primed = apply_prime(tf);
  CHECK(primed.translates.size() == 4 * 27);  // q^3 per translate
  InducedFn heck = apply_hecke_T(tf);
  CHECK(heck.translates.size() == 4 * (27 + 81));  // q^3 + q^4 per translate
  InducedFn dt = apply_delta_theta(f);
  CHECK(dt.translates.size() == 4 * 27 + 4 * 9);  // priming + q^2 tail

  // priming summands are uhat(y, z) with val y, z >= N: members of K_N
  long N = 1;
  auto ys = residue_transversal(ctx, Field::E, N, N + 1);
  auto zs = residue_transversal(ctx, Field::F, N, N + 1);
  for (const auto& y : ys)
    for (const auto& z : zs)
      CHECK(is_in_subgroup(u_hat_elt(y, z.re()), Subgroup::K(N)));
}

TEST_CASE("known coset values replace symbols") {
  Ctx ctx = context_new(3);
  InducedParams p = ru2i(ctx);
  p.level = 2;
  p.mode = SupportMode::Partial;
  InducedFn f = newform(p);
  f.known[1] = CycScalar(7);
  EvalResult r = f.eval(gamma_elt(ctx, 1));
  CHECK(r.is_scalar());
  CHECK(r.scalar() == CycScalar(7));
}

TEST_CASE("two-value identity holds directly on the raised newform") {
  // nu g(e) = (q^2(a + a^{-1}) + q^3 - q^2) g(e) + q^2(q^2-1) a^{-1} g(gamma)
  // with g = theta' f; every quantity a resolved scalar at level 1.
  for (long p : {3L, 5L}) {
    Ctx ctx = context_new(p);
    for (const InducedParams& params : {ru2i(ctx), ru3(ctx)}) {
      InducedFn tf = apply_theta_prime(newform(params));
      GroupElt e = identity_elt(ctx);
      CycScalar ge = tf.eval(e).scalar();
      CycScalar ggamma = tf.eval(gamma_elt(ctx, 1)).scalar();
      CycScalar lhs = apply_hecke_T(tf).eval(e).scalar();
      const CycScalar& a = params.a;
      CycScalar qq(p), q2(p * p);
      CycScalar rhs = (q2 * (a + a.inverse()) + q2 * qq - q2) * ge +
                      q2 * (q2 - CycScalar(1)) * a.inverse() * ggamma;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("lemma reports") {
  Ctx ctx = context_new(3);
  CHECK(verify_lemma(LemmaId::ThetaAtIdentity, ru2i(ctx)).ok);
  CHECK(verify_lemma(LemmaId::EigenRelation, ru2i(ctx)).ok);
  CHECK(verify_lemma(LemmaId::EigenRelation, ru3(ctx)).ok);
  CHECK(verify_lemma(LemmaId::NuFromRatio, ru2i(ctx)).ok);
  CHECK(verify_lemma(LemmaId::ThetaAtGamma, ru2i(ctx)).ok);
  CHECK(verify_lemma(LemmaId::ThetaGammaZero, ru3(ctx)).ok);
  InducedParams formal = ru2i(ctx);
  formal.level = 2;
  formal.mode = SupportMode::Partial;
  LemmaReport two = verify_lemma(LemmaId::HeckeTwoValue, formal);
  CHECK(two.ok);
}

TEST_CASE("eigen_pair refuses to guess when evaluations do not resolve") {
  // At level 2 in Partial mode the gamma-class values stay symbolic, so the
  // eigenvalue extraction must fail loudly instead of inventing numbers.
  Ctx ctx = context_new(3);
  InducedParams p;
  p.ctx = ctx;
  p.a = CycScalar(2);
  p.mu2 = CharacterMu2::trivial();
  p.level = 2;
  p.mode = SupportMode::Partial;
  CHECK_THROWS_AS(eigen_pair(p), DomainError);
}

TEST_CASE("partial mode surfaces unknowns as symbols, not guesses") {
  Ctx ctx = context_new(3);
  InducedParams p = ru2i(ctx);
  p.level = 2;
  p.mode = SupportMode::Partial;
  InducedFn f = newform(p);
  EvalResult r = f.eval(gamma_elt(ctx, 1));
  CHECK_FALSE(r.is_scalar());
  CHECK_FALSE(r.is_indeterminate());
  CHECK(r.unknown_coeff(1) == CycScalar(1));
  // supported mode pins the same point to zero
  p.mode = SupportMode::Supported;
  CHECK(newform(p).eval(gamma_elt(ctx, 1)).scalar().is_zero());
}

#include "u21/classify.hpp"

namespace u21 {

namespace {

void check_ps_value(const mpq_class& a, long q) {
  if (a == 0) throw DomainError("mu1(pi) must be nonzero");
  mpq_class qq(q);
  if (a == rational_pow(qq, -2) || a == rational_pow(qq, 2))
    throw DomainError("a = q^{+-2}: reducible (Steinberg family); use the "
                      "steinberg tag");
  if (a == -rational_pow(qq, -1) || a == -qq)
    throw DomainError("a = -q^{+-1}: reducible (omega |.|_F family); use the "
                      "ru2 tag");
}

ParamScalar ps_of(const mpq_class& r) { return ParamScalar(CycScalar(r)); }

}  // namespace

ReprSpec ReprSpec::unramified_ps(const mpq_class& a, long q) {
  // a = 1 stays irreducible here since mu2 is trivial; with nontrivial mu2
  // that locus is the ru3 tag.
  check_ps_value(a, q);
  ReprSpec s;
  s.tag = Case::UnramifiedPS;
  s.a = a;
  return s;
}

ReprSpec ReprSpec::irred_ps_unram_mu2(const mpq_class& a, long q, unsigned c,
                                      long N_input) {
  check_ps_value(a, q);
  if (a == 1)
    throw DomainError("a = 1 with nontrivial mu2 is the ru3 case");
  if (c < 1) throw DomainError("irred_ps_unram_mu2: mu2 must be nontrivial");
  if (N_input < 1)
    throw DomainError("irred_ps_unram_mu2: positive conductor required");
  ReprSpec s;
  s.tag = Case::IrredPSUnramMu2;
  s.a = a;
  s.c = c;
  s.N_input = N_input;
  return s;
}

ReprSpec ReprSpec::steinberg() {
  ReprSpec s;
  s.tag = Case::Steinberg;
  return s;
}

ReprSpec ReprSpec::ru2(unsigned c) {
  ReprSpec s;
  s.tag = Case::RU2;
  s.c = c;
  return s;
}

ReprSpec ReprSpec::ru3(unsigned c) {
  if (c < 1) throw DomainError("ru3: mu2 must be nontrivial (c >= 1)");
  ReprSpec s;
  s.tag = Case::RU3;
  s.c = c;
  return s;
}

ReprSpec ReprSpec::ramified_or_supercuspidal(bool L_is_trivial_factor,
                                             long N_input) {
  if (N_input < 0) throw DomainError("conductor must be non-negative");
  ReprSpec s;
  s.tag = Case::RamifiedOrSupercuspidal;
  s.L_is_trivial_factor = L_is_trivial_factor;
  s.N_input = N_input;
  return s;
}

std::string ReprSpec::case_name() const {
  switch (tag) {
    case Case::UnramifiedPS: return "unramified-ps";
    case Case::IrredPSUnramMu2: return "irred-ps";
    case Case::Steinberg: return "steinberg";
    case Case::RU2: return c == 0 ? "ru2-i" : "ru2-ii";
    case Case::RU3: return "ru3";
    case Case::RamifiedOrSupercuspidal: return "ramified-or-supercuspidal";
  }
  return "?";
}

ReprInvariants invariants(const ReprSpec& spec, const ParamScalar& q) {
  ReprInvariants out{0, ZetaRational::one(), ZetaRational::one(),
                     ZetaRational::one()};
  ZetaRational le1 = l_factor_trivial();
  switch (spec.tag) {
    case ReprSpec::Case::UnramifiedPS: {
      ParamScalar a = ps_of(spec.a);
      out.N = 0;
      out.L = l_factor_unramified(a) * l_factor_unramified(a.inverse()) * le1;
      out.bound = out.L;
      break;
    }
    case ReprSpec::Case::IrredPSUnramMu2: {
      ParamScalar a = ps_of(spec.a);
      out.N = spec.N_input;
      out.L = l_factor_unramified(a) * l_factor_unramified(a.inverse());
      out.bound = out.L * le1;
      break;
    }
    case ReprSpec::Case::Steinberg: {
      ParamScalar a = q.pow(-2);
      out.N = 2;
      out.L = l_factor_unramified(a);
      out.bound = out.L * le1;
      break;
    }
    case ReprSpec::Case::RU2: {
      ParamScalar a = -q.pow(-1);
      out.N = spec.c + 1;
      out.L = spec.c == 0 ? l_factor_unramified(a) * le1
                          : l_factor_unramified(a);
      out.bound = l_factor_unramified(a) * le1;
      break;
    }
    case ReprSpec::Case::RU3: {
      out.N = spec.c;
      out.L = le1 * le1;
      out.bound = le1 * le1 * le1;  // a = 1: L_E(s,mu1) = L_E(s,mu1bar^-1) = L_E(s,1)
      break;
    }
    case ReprSpec::Case::RamifiedOrSupercuspidal: {
      out.N = spec.N_input;
      out.L = spec.L_is_trivial_factor ? le1 : ZetaRational::one();
      out.bound = le1;
      break;
    }
  }
  out.epsilon = epsilon_factor(out.N, q);
  if (!divides(out.L, out.bound))
    throw InternalError("classification table violates its own bound");
  return out;
}

unsigned conductor_of_mu2(const CharacterMu2& mu2) {
  // Re-verify the table: trivial at level c, nontrivial at level c-1.
  if (mu2.conductor() == 0) {
    if (!mu2.is_trivial())
      throw DomainError("mu2 table inconsistent: c = 0 but not trivial");
    return 0;
  }
  if (mu2.conductor() != 1)
    throw DomainError("mu2 tables with conductor >= 2 are not supported");
  if (mu2.order() <= 1)
    throw DomainError("mu2 table inconsistent: conductor 1 but order 1");
  return mu2.conductor();
}

bool check_estimates(const ReprSpec& spec, const ParamScalar& q) {
  ReprInvariants inv = invariants(spec, q);
  return divides(inv.L, inv.bound);
}

namespace {

void push(CrossCheckReport& r, const std::string& k, const std::string& v) {
  r.values.emplace_back(k, v);
}

}  // namespace

CrossCheckReport cross_check(const ReprSpec& spec, long p) {
  CrossCheckReport rep;
  rep.case_name = spec.case_name();
  Ctx ctx = context_new(p);

  InducedParams params;
  params.ctx = ctx;
  switch (spec.tag) {
    case ReprSpec::Case::RU2:
      if (spec.c != 0)
        throw DomainError("cross_check: RU2 supported for trivial mu2 only");
      params.a = CycScalar(mpq_class(-1, p));
      params.mu2 = CharacterMu2::trivial();
      params.level = 1;
      params.mode = SupportMode::Partial;
      break;
    case ReprSpec::Case::RU3:
      if (spec.c != 1)
        throw DomainError("cross_check: RU3 engine run requires c = 1");
      params.a = CycScalar(1);
      params.mu2 = CharacterMu2::residue_char(ctx, 2);
      params.level = 1;
      params.mode = SupportMode::Supported;
      break;
    case ReprSpec::Case::IrredPSUnramMu2:
      if (spec.c != 1 || spec.N_input != 1)
        throw DomainError("cross_check: irreducible case requires c = N = 1");
      params.a = CycScalar(spec.a);
      params.mu2 = CharacterMu2::residue_char(ctx, 2);
      params.level = 1;
      params.mode = SupportMode::Supported;
      break;
    default:
      throw DomainError("cross_check: case has no induced-model route");
  }

  auto [nu, lambda] = eigen_pair(params);
  push(rep, "nu", nu.str());
  push(rep, "lambda", lambda.str());
  if (!nu.is_rational() || !lambda.is_rational()) {
    rep.detail = "eigenvalues are not rational";
    return rep;
  }

  ParamScalar q = ParamScalar(CycScalar(p));
  ParamScalar nu_v(nu), lambda_v(lambda), a_v(params.a);
  ZetaRational z_closed = zeta_closed(nu_v, lambda_v, q) * l_factor_trivial();
  ZetaRational z_factored = zeta_factored(nu_v, a_v, q);
  push(rep, "zeta (closed route)", render(z_closed));
  push(rep, "zeta (factored route)", render(z_factored));

  ReprInvariants inv = invariants(spec, q);
  push(rep, "table L", render(inv.L));
  push(rep, "N", std::to_string(inv.N));

  bool eig_rel =
      ParamScalar(lambda) == lambda_from_nu(nu_v, a_v, q);
  bool zeta_match = z_closed == z_factored && z_closed == inv.L;
  bool mono_ok = monomial_check(false, inv.N, q) &&
                 !monomial_check(true, inv.N, q);
  bool est_ok = divides(inv.L, inv.bound);
  bool eps_ok =
      inv.epsilon.eval_at(CycScalar(mpq_class(1, p))) == CycScalar(1);

  push(rep, "eigenvalue relation", eig_rel ? "pass" : "FAIL");
  push(rep, "zeta equals table L", zeta_match ? "pass" : "FAIL");
  push(rep, "monomial elimination", mono_ok ? "pass" : "FAIL");
  push(rep, "divisibility bound", est_ok ? "pass" : "FAIL");
  push(rep, "epsilon at s = 1/2", eps_ok ? "pass" : "FAIL");

  rep.ok = eig_rel && zeta_match && mono_ok && est_ok && eps_ok;
  if (!rep.ok && rep.detail.empty()) rep.detail = "exact comparison failed";
  return rep;
}

}  // namespace u21

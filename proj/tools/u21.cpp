#include <CLI11.hpp>

#include <iostream>

#include "u21/suites.hpp"

namespace {

using namespace u21;

int cmd_classify(const std::string& case_name, const std::string& a_str,
                 unsigned c, long N, const std::string& L_choice, long q) {
  ReprSpec spec = [&] {
    if (case_name == "steinberg") return ReprSpec::steinberg();
    if (case_name == "ru2") return ReprSpec::ru2(c);
    if (case_name == "ru3") return ReprSpec::ru3(c);
    if (case_name == "unramified-ps")
      return ReprSpec::unramified_ps(parse_rational(a_str), q);
    if (case_name == "irred-ps")
      return ReprSpec::irred_ps_unram_mu2(parse_rational(a_str), q, c, N);
    if (case_name == "ramified-or-supercuspidal")
      return ReprSpec::ramified_or_supercuspidal(L_choice == "le1", N);
    throw DomainError("unknown case: " + case_name);
  }();
  ReprInvariants inv = invariants(spec, ParamScalar(CycScalar(q)));
  std::cout << "case=" << spec.case_name() << "\n"
            << "N=" << inv.N << "\n"
            << "L=" << render(inv.L) << "\n"
            << "eps=" << render(inv.epsilon) << "\n"
            << "bound=" << render(inv.bound) << "\n"
            << "divides-bound=" << (divides(inv.L, inv.bound) ? "yes" : "no")
            << "\n";
  return 0;
}

int cmd_zeta(bool symbolic, const std::string& nu_str,
             const std::string& lambda_str, const std::string& a_str, long q,
             unsigned terms) {
  if (symbolic) {
    ParamScalar nu = ps_nu(), lambda = ps_lambda(), qs = ps_q(), a = ps_a();
    auto series = zeta_series(whittaker_seq(nu, lambda, qs, terms), qs)
                      .series_expand(terms);
    auto closed = zeta_closed(nu, lambda, qs).series_expand(terms);
    bool series_ok = series == closed;
    bool factor_ok = zeta_closed(nu, lambda_from_nu(nu, a, qs), qs) *
                         l_factor_trivial() ==
                     zeta_factored(nu, a, qs);
    std::cout << "closed=" << render(zeta_closed(nu, lambda, qs)) << "\n"
              << "series-matches-closed[" << terms << "]="
              << (series_ok ? "pass" : "FAIL") << "\n"
              << "factorization-identity=" << (factor_ok ? "pass" : "FAIL")
              << "\n";
    return series_ok && factor_ok ? 0 : 1;
  }
  if (nu_str.empty()) throw DomainError("zeta: --nu is required");
  ParamScalar nu{CycScalar(parse_rational(nu_str))};
  ParamScalar qs{CycScalar(mpq_class(q))};
  bool mismatch = false;
  if (!lambda_str.empty()) {
    ParamScalar lambda{CycScalar(parse_rational(lambda_str))};
    ZetaRational closed = zeta_closed(nu, lambda, qs);
    std::cout << "closed=" << render(closed) << "\n";
    std::cout << "with-L_E(s,1)=" << render(closed * l_factor_trivial())
              << "\n";
    auto coeffs = closed.series_expand(terms);
    std::cout << "series=";
    for (unsigned i = 0; i <= terms; ++i)
      std::cout << (i ? ", " : "") << coeffs[i].str();
    std::cout << "\n";
    if (!a_str.empty()) {
      ParamScalar a{CycScalar(parse_rational(a_str))};
      ZetaRational fac = zeta_factored(nu, a, qs);
      std::cout << "factored=" << render(fac) << "\n";
      mismatch = !(closed * l_factor_trivial() == fac);
      if (mismatch) std::cout << "mismatch: closed route != factored route\n";
    }
  } else if (!a_str.empty()) {
    ParamScalar a{CycScalar(parse_rational(a_str))};
    std::cout << "factored=" << render(zeta_factored(nu, a, qs)) << "\n";
  } else {
    throw DomainError("zeta: provide --lambda or --a alongside --nu");
  }
  return mismatch ? 1 : 0;
}

int cmd_verify(RunConfig cfg, const std::string& suites_csv) {
  if (!suites_csv.empty() && suites_csv != "all") {
    std::string cur;
    for (char ch : suites_csv + ",") {
      if (ch == ',') {
        if (!cur.empty()) cfg.suites.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
  }
  Report report = run_verification(cfg);
  std::cout << report.body();
  if (!cfg.out_dir.empty())
    std::cout << "report written to " << write_report(report) << "\n";
  return report.failed() == 0 ? 0 : 1;
}

GroupElt parse_point(const Ctx& ctx, const std::string& text) {
  GroupElt g = identity_elt(ctx);
  std::string cur;
  auto apply = [&](const std::string& tok) {
    if (tok.empty() || tok == "e") return;
    if (tok.rfind("zeta", 0) == 0) {
      long k = 1;
      if (tok.size() > 4 && tok[4] == '^') k = std::stol(tok.substr(5));
      g = g * zeta_pow(ctx, k);
      return;
    }
    if (tok.rfind("gamma_", 0) == 0) {
      g = g * gamma_elt(ctx, std::stol(tok.substr(6)));
      return;
    }
    if (tok.rfind("t_", 0) == 0) {
      g = g * t_w_elt(ctx, std::stol(tok.substr(2)));
      return;
    }
    throw DomainError("eval: unknown point token '" + tok + "'");
  };
  for (char ch : text + ",") {
    if (ch == ',') {
      apply(cur);
      cur.clear();
    } else if (!isspace((unsigned char)ch)) {
      cur += ch;
    }
  }
  return g;
}

int cmd_eval(long p, unsigned M, const std::string& case_name,
             const std::string& op, const std::string& point) {
  Ctx ctx = context_new(p, M);
  InducedParams params;
  params.ctx = ctx;
  params.level = 1;
  if (case_name == "ru2-i") {
    params.a = CycScalar(mpq_class(-1, p));
    params.mu2 = CharacterMu2::trivial();
    params.mode = SupportMode::Partial;
  } else if (case_name == "ru3") {
    params.a = CycScalar(1);
    params.mu2 = CharacterMu2::residue_char(ctx, 2);
    params.mode = SupportMode::Supported;
  } else if (case_name == "irred-ps") {
    params.a = CycScalar(2);
    params.mu2 = CharacterMu2::residue_char(ctx, 2);
    params.mode = SupportMode::Supported;
  } else {
    throw DomainError("eval: unknown case " + case_name);
  }
  InducedFn f = newform(params);
  if (op == "theta") {
    f = apply_theta_prime(f);
  } else if (op == "hecke-theta") {
    f = apply_hecke_T(apply_theta_prime(f));
  } else if (op == "delta-theta") {
    f = apply_delta_theta(f);
  } else if (op != "base") {
    throw DomainError("eval: unknown operator " + op);
  }
  EvalResult r = f.eval(parse_point(ctx, point));
  std::cout << "value=" << r.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computation and verification engine for newforms of "
               "unramified U(2,1)"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config");

  RunConfig cfg;
  app.add_option("--p", cfg.p, "residue cardinality (odd prime)")
      ->envname("U21_P")
      ->capture_default_str();
  app.add_option("--M", cfg.M, "working precision in pi-adic digits")
      ->envname("U21_M")
      ->capture_default_str();
  app.add_option("--terms", cfg.terms, "series truncation order")
      ->envname("U21_TERMS")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")
      ->envname("U21_SEED")
      ->capture_default_str();
  app.add_option("--samples", cfg.samples, "samples per property check")
      ->envname("U21_SAMPLES")
      ->capture_default_str();
  app.add_option("--out", cfg.out_dir, "report output directory")
      ->envname("U21_OUT");

  auto* c_cmd = app.add_subcommand("classify",
                                   "conductor, L-factor and epsilon factor");
  std::string case_name = "steinberg", a_str, L_choice = "le1";
  unsigned c_param = 0;
  long N_param = 0, q_param = 0;
  c_cmd->add_option("--case", case_name,
                    "steinberg | ru2 | ru3 | unramified-ps | irred-ps | "
                    "ramified-or-supercuspidal")
      ->required();
  c_cmd->add_option("--a", a_str, "mu1(pi) as num/den");
  c_cmd->add_option("--c", c_param, "conductor of mu2");
  c_cmd->add_option("--N", N_param, "conductor input (interface cases)");
  c_cmd->add_option("--L", L_choice, "interface L-factor: 1 | le1");
  c_cmd->add_option("--q", q_param, "overrides --p for the table");

  auto* z_cmd = app.add_subcommand("zeta", "zeta integrals as rational "
                                           "functions in X = q^{-2s}");
  bool symbolic = false;
  std::string nu_str, lambda_str, za_str;
  z_cmd->add_flag("--symbolic", symbolic, "run the symbolic identities");
  z_cmd->add_option("--nu", nu_str, "Hecke eigenvalue nu (num/den)");
  z_cmd->add_option("--lambda", lambda_str, "eigenvalue lambda (num/den)");
  z_cmd->add_option("--a", za_str, "mu1(pi) (num/den)");
  z_cmd->add_option("--q", q_param, "overrides --p");

  auto* v_cmd = app.add_subcommand("verify", "run verification suites");
  std::string suites_csv = "all";
  v_cmd->add_option("--suite", suites_csv,
                    "comma-separated suite list, or 'all'");

  auto* e_cmd = app.add_subcommand("eval", "evaluate operator images of a "
                                           "newform at a group element");
  std::string eval_case = "ru2-i", op = "theta", point = "e";
  e_cmd->add_option("--case", eval_case, "ru2-i | ru3 | irred-ps");
  e_cmd->add_option("--op", op, "base | theta | hecke-theta | delta-theta");
  e_cmd->add_option("--point", point,
                    "comma-separated word: e, zeta^k, gamma_i, t_i");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    long q = q_param > 0 ? q_param : cfg.p;
    if (c_cmd->parsed())
      return cmd_classify(case_name, a_str, c_param, N_param, L_choice, q);
    if (z_cmd->parsed())
      return cmd_zeta(symbolic, nu_str, lambda_str, za_str, q, cfg.terms);
    if (v_cmd->parsed()) return cmd_verify(cfg, suites_csv);
    if (e_cmd->parsed()) return cmd_eval(cfg.p, cfg.M, eval_case, op, point);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

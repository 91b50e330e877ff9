#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "u21/suites.hpp"

namespace py = pybind11;
using namespace u21;

namespace {

InducedParams params_for(const std::string& case_name, long p,
                         const std::string& a_str) {
  Ctx ctx = context_new(p);
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
    params.a = CycScalar(a_str.empty() ? mpq_class(2) : parse_rational(a_str));
    params.mu2 = CharacterMu2::residue_char(ctx, 2);
    params.mode = SupportMode::Supported;
  } else {
    throw DomainError("unknown induced-model case: " + case_name);
  }
  return params;
}

ReprSpec spec_for(const std::string& case_name, const std::string& a_str,
                  unsigned c, long N, bool L_trivial, long q) {
  if (case_name == "steinberg") return ReprSpec::steinberg();
  if (case_name == "ru2") return ReprSpec::ru2(c);
  if (case_name == "ru3") return ReprSpec::ru3(c);
  if (case_name == "unramified-ps")
    return ReprSpec::unramified_ps(parse_rational(a_str), q);
  if (case_name == "irred-ps")
    return ReprSpec::irred_ps_unram_mu2(parse_rational(a_str), q, c, N);
  if (case_name == "ramified-or-supercuspidal")
    return ReprSpec::ramified_or_supercuspidal(L_trivial, N);
  throw DomainError("unknown case: " + case_name);
}

ParamScalar ps_rat(const std::string& s) {
  return ParamScalar(CycScalar(parse_rational(s)));
}

}  // namespace

PYBIND11_MODULE(pyu21, m) {
  m.doc() = "Exact newform computations for unramified U(2,1): Hecke "
            "eigenvalues, zeta integrals, L- and epsilon-factors";

  py::register_exception<DomainError>(m, "U21DomainError");
  py::register_exception<PrecisionError>(m, "U21PrecisionError");

  m.def("least_nonresidue",
        [](long p) { return context_new(p)->eps; },
        py::arg("p"), "Least positive quadratic non-residue mod p");

  m.def("additive_char_sum",
        [](long p, long lo) { return additive_char_sum(context_new(p), lo).str(); },
        py::arg("p"), py::arg("lo") = -1);

  m.def(
      "eigen_pair",
      [](const std::string& case_name, long p, const std::string& a) {
        auto [nu, lambda] = eigen_pair(params_for(case_name, p, a));
        return py::make_tuple(nu.str(), lambda.str());
      },
      py::arg("case_name"), py::arg("p"), py::arg("a") = "",
      "Exact (nu, lambda) for ru2-i, ru3 or irred-ps at the prime p");

  m.def(
      "theta_value",
      [](const std::string& case_name, long p, long gamma_index) {
        InducedParams params = params_for(case_name, p, "");
        InducedFn tf = apply_theta_prime(newform(params));
        return tf.eval(gamma_elt(params.ctx, gamma_index)).str();
      },
      py::arg("case_name"), py::arg("p"), py::arg("gamma_index") = 1,
      "(theta' f)(gamma_i) as an exact scalar");

  m.def(
      "zeta_closed",
      [](const std::string& nu, const std::string& lambda,
         const std::string& q) {
        return render(u21::zeta_closed(ps_rat(nu), ps_rat(lambda),
                                       ps_rat(q)));
      },
      py::arg("nu"), py::arg("lambda_"), py::arg("q"));

  m.def(
      "zeta_factored",
      [](const std::string& nu, const std::string& a, const std::string& q) {
        return render(u21::zeta_factored(ps_rat(nu), ps_rat(a), ps_rat(q)));
      },
      py::arg("nu"), py::arg("a"), py::arg("q"));

  m.def(
      "whittaker_coefficients",
      [](const std::string& nu, const std::string& lambda,
         const std::string& q, unsigned M) {
        std::vector<std::string> out;
        for (const auto& c :
             whittaker_seq(ps_rat(nu), ps_rat(lambda), ps_rat(q), M))
          out.push_back(c.str());
        return out;
      },
      py::arg("nu"), py::arg("lambda_"), py::arg("q"), py::arg("M") = 8);

  m.def(
      "classify",
      [](const std::string& case_name, long q, const std::string& a,
         unsigned c, long N, bool L_trivial) {
        ReprSpec spec = spec_for(case_name, a, c, N, L_trivial, q);
        ReprInvariants inv = invariants(spec, ParamScalar(CycScalar(q)));
        py::dict d;
        d["case"] = spec.case_name();
        d["N"] = inv.N;
        d["L"] = render(inv.L);
        d["epsilon"] = render(inv.epsilon);
        d["bound"] = render(inv.bound);
        d["divides_bound"] = divides(inv.L, inv.bound);
        return d;
      },
      py::arg("case_name"), py::arg("q"), py::arg("a") = "",
      py::arg("c") = 0, py::arg("N") = 0, py::arg("L_trivial") = false,
      "Conductor, L-factor, epsilon factor and the divisibility bound");

  m.def(
      "cross_check",
      [](const std::string& case_name, long p, const std::string& a,
         unsigned c, long N) {
        ReprSpec spec = spec_for(case_name, a, c, N, false, p);
        CrossCheckReport r = cross_check(spec, p);
        py::dict d;
        d["ok"] = r.ok;
        d["case"] = r.case_name;
        py::dict vals;
        for (const auto& [k, v] : r.values) vals[py::str(k)] = v;
        d["values"] = vals;
        return d;
      },
      py::arg("case_name"), py::arg("p"), py::arg("a") = "",
      py::arg("c") = 0, py::arg("N") = 0,
      "End-to-end engine/table comparison at the prime p");

  m.def(
      "monomial_check",
      [](bool inverse_le, long N, long q) {
        return monomial_check(inverse_le, N, ParamScalar(CycScalar(q)));
      },
      py::arg("inverse_le"), py::arg("N"), py::arg("q"));

  m.def(
      "verify",
      [](const std::string& suites_csv, long p, unsigned long seed,
         unsigned samples) {
        RunConfig cfg;
        cfg.p = p;
        cfg.seed = seed;
        cfg.samples = samples;
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
        return py::make_tuple(report.passed(), report.failed(),
                              report.body());
      },
      py::arg("suites") = "all", py::arg("p") = 3, py::arg("seed") = 0,
      py::arg("samples") = 50,
      "Run verification suites; returns (passed, failed, report_body)");
}

#pragma once

#include <string>
#include <vector>

#include "u21/induced.hpp"
#include "u21/zeta.hpp"

namespace u21 {

/// Classification input: which representation the invariants are for.
/// Constructors enforce the case split (reducible parameter values are
/// rejected from the principal-series tags and directed to their own tags).
struct ReprSpec {
  enum class Case {
    UnramifiedPS,            // irreducible, mu1 unramified, mu2 trivial; N = 0
    IrredPSUnramMu2,         // irreducible, mu1 unramified, mu2 nontrivial
    Steinberg,               // mu1 = |.|_E (a = q^{-2}), mu2 trivial; N = 2
    RU2,                     // mu1|F* = omega |.|_F (a = -1/q); N = c + 1
    RU3,                     // mu1 trivial (a = 1), mu2 nontrivial; N = c
    RamifiedOrSupercuspidal  // interface case: L and N are inputs
  };

  Case tag;
  mpq_class a;        // mu1(pi) for the principal-series tags
  unsigned c = 0;     // conductor of mu2
  long N_input = 0;   // conductor input for the interface cases
  bool L_is_trivial_factor = false;  // RamifiedOrSupercuspidal: L = L_E(s,1)?

  static ReprSpec unramified_ps(const mpq_class& a, long q);
  static ReprSpec irred_ps_unram_mu2(const mpq_class& a, long q, unsigned c,
                                     long N_input);
  static ReprSpec steinberg();
  static ReprSpec ru2(unsigned c);
  static ReprSpec ru3(unsigned c);
  static ReprSpec ramified_or_supercuspidal(bool L_is_trivial_factor,
                                            long N_input);

  std::string case_name() const;
};

/// Output of the classification: conductor, L-factor, epsilon factor, and
/// the divisibility bound the L-factor must respect.
struct ReprInvariants {
  long N;
  ZetaRational L;
  ZetaRational epsilon;
  ZetaRational bound;
};

/// The case table; q may be symbolic or a numeric constant.
ReprInvariants invariants(const ReprSpec& spec, const ParamScalar& q);

/// Conductor read off (and re-verified against) the character table.
unsigned conductor_of_mu2(const CharacterMu2& mu2);

/// divides(L, bound) for the given case.
bool check_estimates(const ReprSpec& spec, const ParamScalar& q);

struct CrossCheckReport {
  bool ok = false;
  std::string case_name;
  std::vector<std::pair<std::string, std::string>> values;
  std::string detail;
};

/// End-to-end comparison at the prime p: run the induced-model engine,
/// derive the zeta function by both the closed and factored routes, and
/// compare exactly against the table L-factor; also re-run the
/// monomial-candidate elimination and the divisibility estimate.
/// Supported cases: RU2 with c = 0, RU3 with c = 1, IrredPSUnramMu2 with
/// c = 1.
CrossCheckReport cross_check(const ReprSpec& spec, long p);

}  // namespace u21

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "u21/group.hpp"

namespace u21 {

/// Character mu2 of the norm-one group E^1, given by a table on the residue
/// level.  Conductors 0 (trivial) and 1 (a character of the order-(q+1)
/// norm-one residue group) are supported by the evaluator.
class CharacterMu2 {
 public:
  static CharacterMu2 trivial();
  /// Character of order m sending a fixed generator of the norm-one residue
  /// group to zeta_m^power; requires m | q+1 and m > 1 (conductor 1).
  static CharacterMu2 residue_char(const Ctx& ctx, unsigned m, long power = 1);

  unsigned conductor() const { return c_; }
  unsigned order() const { return m_; }
  bool is_trivial() const { return c_ == 0; }

  /// mu2(beta) for beta in E^1 (norm checked at working precision).
  CycScalar value(const ExtElem& beta) const;

 private:
  unsigned c_ = 0;
  unsigned m_ = 1;
  long power_ = 0;
  Ctx ctx_;
  std::map<std::pair<long, long>, long> dlog_;  // residue pair -> exponent
};

enum class SupportMode { Supported, Partial };

/// Parameters of the induced model Ind_B^G(mu1 (x) mu2) hosting a level-n
/// newform: a = mu1(pi) for the unramified mu1, the E^1-character mu2, the
/// level, and what is known about the newform's support.
struct InducedParams {
  Ctx ctx;
  CycScalar a;
  CharacterMu2 mu2;
  long level = 1;
  SupportMode mode = SupportMode::Supported;

  /// Enforces a != 0, the genericity bound q^2 a^{-1} + q != 0 (i.e.
  /// a != -q), and conductor(mu2) <= level.
  void validate() const;
};

/// Value of an evaluation: kappa_0 plus unknown-coset contributions
/// kappa_i * U_i (U_i = base-function value on the gamma_i coset), or
/// Indeterminate when a Partial-mode function was evaluated off the cosets
/// it controls.
class EvalResult {
 public:
  EvalResult() = default;
  explicit EvalResult(CycScalar scalar) : k0_(std::move(scalar)) {}
  static EvalResult indeterminate(std::string offender);

  bool is_indeterminate() const { return indeterminate_; }
  const std::string& offender() const { return offender_; }
  bool is_scalar() const { return !indeterminate_ && unknowns_.empty(); }
  const CycScalar& scalar() const;
  const CycScalar& constant_part() const { return k0_; }
  const std::map<long, CycScalar>& unknown_parts() const { return unknowns_; }
  /// Coefficient of U_i (zero when absent).
  CycScalar unknown_coeff(long rep) const;

  void add_scalar(const CycScalar& c);
  void add_unknown(long rep, const CycScalar& coeff);

  bool operator==(const EvalResult& o) const;
  std::string str() const;

 private:
  CycScalar k0_;
  std::map<long, CycScalar> unknowns_;
  bool indeterminate_ = false;
  std::string offender_;
};

/// A newform (or operator image of one) realized as a finite sum of right
/// translates of the base evaluator: f(g) = sum coeff * f0(g * h).
class InducedFn {
 public:
  InducedParams params;
  std::vector<std::pair<GroupElt, CycScalar>> translates;
  long effective_level = 1;
  /// Known base-function values on non-identity cosets (rep -> value).
  std::map<long, CycScalar> known;

  EvalResult eval(const GroupElt& g) const;
};

/// The base newform evaluator; f(e) = 1.
InducedFn newform(const InducedParams& params);

/// Level raising: theta' f = pi(zeta^{-1}) f + sum over p_F^{-1-N}/p_F^{-N}
/// of pi(u(0,x)) f.  1 + q translates per existing translate.
InducedFn apply_theta_prime(const InducedFn& f);

/// The priming sum: w' = sum over u_hat(y, z), y in p_E^N/p_E^{N+1},
/// z in p_F^N/p_F^{N+1} (q^3 summands).
InducedFn apply_prime(const InducedFn& f);

/// Hecke operator on level N+1, unfolded:
/// T w = pi(zeta^{-1}) w' + sum pi(u(a,b) zeta) w over a in o_E/p_E,
/// b in p_F^{-1-N}/p_F^{1-N}.
InducedFn apply_hecke_T(const InducedFn& f);

/// delta theta' f = (theta' f)' + sum over p_E^{-1}/o_E of
/// pi(zeta u(y,0)) theta' f, for a base newform f.
InducedFn apply_delta_theta(const InducedFn& f);

/// (nu, lambda): nu = eval(T theta' f, e) / eval(theta' f, e) and
/// lambda = eval(delta theta' f, e).  DomainError (naming the offending
/// element) when an evaluation fails to resolve to a scalar.
std::pair<CycScalar, CycScalar> eigen_pair(const InducedParams& params);

enum class LemmaId {
  ThetaAtIdentity,   // (theta' f)(e) = (q^2 a^{-1} + q) f(e)
  EigenRelation,     // lambda = (nu + q^2 - q^2 a)(1 + q^{-1} a)
  HeckeTwoValue,     // nu g(e) = (...) g(e) + q^2(q^2-1) a^{-1} g(gamma)
  NuFromRatio,       // nu = ... + (...) (theta' f)(gamma_N)/f(e)
  ThetaAtGamma,      // (theta' f)(gamma_1) = (q+1) f(e)   [a = -1/q]
  ThetaGammaZero,    // (theta' f)(gamma_N) = 0            [nontrivial mu2]
};

struct LemmaReport {
  bool ok = false;
  std::string name;
  std::vector<std::pair<std::string, std::string>> values;
  std::string detail;
};

LemmaReport verify_lemma(LemmaId which, const InducedParams& params);

}  // namespace u21

#pragma once

#include <string>
#include <vector>

#include "u21/poly.hpp"

namespace u21 {

/// Rational function in X = q^{-2s} over the parameter field, with an
/// overall X^shift Laurent factor.  Canonical form: gcd(num, den) = 1 over
/// the fraction field, num(0) != 0 (or num = 0), den(0) = 1, so structural
/// equality is exact equality.
class ZetaRational {
 public:
  ZetaRational() : num_{ParamScalar(0)}, den_{ParamScalar(1)}, shift_(0) {}

  static ZetaRational from_scalar(const ParamScalar& c);
  static ZetaRational one() { return from_scalar(ParamScalar(1)); }
  /// c * X^k
  static ZetaRational monomial(const ParamScalar& c, long k);
  /// num(X) / den(X) * X^shift from coefficient lists (ascending powers).
  static ZetaRational make(std::vector<ParamScalar> num,
                           std::vector<ParamScalar> den, long shift = 0);

  const std::vector<ParamScalar>& num() const { return num_; }
  const std::vector<ParamScalar>& den() const { return den_; }
  long shift() const { return shift_; }

  bool is_zero() const;
  bool is_one() const;
  /// Single Laurent term with trivial denominator.
  bool is_monomial() const;
  /// Denominator 1 (after reduction): a Laurent polynomial.
  bool is_laurent_polynomial() const;

  ZetaRational operator-() const;
  ZetaRational operator+(const ZetaRational& o) const;
  ZetaRational operator-(const ZetaRational& o) const;
  ZetaRational operator*(const ZetaRational& o) const;
  ZetaRational operator/(const ZetaRational& o) const;
  bool operator==(const ZetaRational& o) const;
  bool operator!=(const ZetaRational& o) const { return !(*this == o); }

  /// First (order+1) power-series coefficients at X = 0.
  /// DomainError when the function has a pole at 0 (shift < 0).
  std::vector<ParamScalar> series_expand(unsigned order) const;

  /// X -> q^{-2} X^{-1}, realizing s -> 1-s; q passed explicitly so the
  /// same code serves symbolic and specialized functions.
  ZetaRational substitute_s_to_one_minus_s(const ParamScalar& q) const;

  /// Substitute exact values for parameter-field indeterminates.
  ZetaRational specialize(const std::map<Var, CycScalar>& values) const;

  /// Evaluate at an exact value of X (must be constant after that).
  CycScalar eval_at(const CycScalar& x) const;

  std::string str() const;

 private:
  void reduce();
  std::vector<ParamScalar> num_, den_;
  long shift_;
};

/// Exact division of rational functions; DomainError when g does not divide
/// f in the 1/P sense (the quotient has a nontrivial denominator).
ZetaRational divide_exact(const ZetaRational& f, const ZetaRational& g);

/// Hecke-Tate factor: 1/(1 - c X) for unramified chi with chi(pi) = c,
/// and 1 for ramified chi.
ZetaRational l_factor_unramified(const ParamScalar& c);
ZetaRational l_factor_ramified();
/// L_E(s, 1).
ZetaRational l_factor_trivial();

/// Whittaker coefficients c_0..c_M from the two-term recursion
///   (nu - q^3) c_0 = q^4 c_1,
///   (nu + q^2 - lambda) c_i + q (nu + q^2 - q^3) c_{i+1} = q^5 c_{i+2},
/// normalized to c_0 = 1.
std::vector<ParamScalar> whittaker_seq(const ParamScalar& nu,
                                       const ParamScalar& lambda,
                                       const ParamScalar& q, unsigned M);

/// Truncated zeta series sum c_i q^{2i} X^i.
ZetaRational zeta_series(const std::vector<ParamScalar>& c,
                         const ParamScalar& q);

/// Closed form (1 - X) / (1 - (nu+q^2-q^3) q^{-2} X - (nu+q^2-lambda) q^{-1} X^2).
ZetaRational zeta_closed(const ParamScalar& nu, const ParamScalar& lambda,
                         const ParamScalar& q);

/// Factored form L_E(s, mu1) / (1 - (nu+q^2-q^3-q^2 a) q^{-2} X); this is the
/// full Phi-zeta integral (the trivial-character factor is already folded in).
ZetaRational zeta_factored(const ParamScalar& nu, const ParamScalar& a,
                           const ParamScalar& q);

/// lambda = (nu + q^2 - q^2 a)(1 + q^{-1} a).
ParamScalar lambda_from_nu(const ParamScalar& nu, const ParamScalar& a,
                           const ParamScalar& q);

/// alpha = a^{-1} + a^{-1} (q^2-1) (q^2 a^{-1} + q)^{-1} r, with
/// r = (theta' f)(gamma_N) / f(e).
ParamScalar alpha_from_ratio(const ParamScalar& a, const ParamScalar& q,
                             const ParamScalar& r);

/// divides(f, g): g / f is a Laurent polynomial.  Both inputs must have the
/// form 1/P with P(0) = 1.
bool divides(const ZetaRational& f, const ZetaRational& g);

/// epsilon factor q^N X^N (the exact form q^{-2N(s-1/2)}).
ZetaRational epsilon_factor(long N, const ParamScalar& q);

/// The functional-equation elimination: if the newform zeta were
/// L / L_E(s,1), the would-be epsilon factor acquires a factor
/// L_E(s,1) / L_E(1-s,1) and stops being a monomial.  candidate_inverse_le
/// selects that alternative; returns whether the reconstructed epsilon is a
/// monomial.
bool monomial_check(bool candidate_inverse_le, long N, const ParamScalar& q);

/// Round-trip text format:  render emits the canonical form, parse accepts it
/// bit-exactly (and whitespace variations).
std::string render(const ZetaRational& z);
ZetaRational parse_zeta(const std::string& text);

}  // namespace u21

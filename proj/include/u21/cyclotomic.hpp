#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace u21 {

/// Error raised when an exact operation is impossible (division by zero,
/// inverting a non-unit, parameters outside a function's domain).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Exact element of the cyclotomic field Q(zeta_m), stored as a polynomial
/// of degree < phi(m) in zeta_m, reduced modulo the m-th cyclotomic
/// polynomial.  m = 1 is a plain rational.  Mixed-order arithmetic promotes
/// both operands into Q(zeta_lcm).
class CycScalar {
 public:
  CycScalar() : m_(1), c_(1) {}
  CycScalar(long n) : m_(1), c_(1) { c_[0] = n; }
  CycScalar(const mpq_class& r) : m_(1), c_(1) { c_[0] = r; }

  static CycScalar rational(const mpq_class& r) { return CycScalar(r); }
  /// zeta_m^k
  static CycScalar root_of_unity(unsigned m, long k = 1);

  unsigned order() const { return m_; }

  bool is_zero() const;
  bool is_one() const { return *this == CycScalar(1); }
  /// True when the element lies in Q (constant coordinate vector).
  bool is_rational() const;
  mpq_class as_rational() const;

  CycScalar operator-() const;
  CycScalar operator+(const CycScalar& o) const;
  CycScalar operator-(const CycScalar& o) const;
  CycScalar operator*(const CycScalar& o) const;
  CycScalar operator/(const CycScalar& o) const;
  CycScalar inverse() const;
  CycScalar pow(long e) const;

  CycScalar& operator+=(const CycScalar& o) { return *this = *this + o; }
  CycScalar& operator-=(const CycScalar& o) { return *this = *this - o; }
  CycScalar& operator*=(const CycScalar& o) { return *this = *this * o; }
  CycScalar& operator/=(const CycScalar& o) { return *this = *this / o; }

  bool operator==(const CycScalar& o) const;
  bool operator!=(const CycScalar& o) const { return !(*this == o); }

  /// Canonical rendering: "n/d" for rationals, otherwise a sum of
  /// "c*zeta_m^k" terms with ascending k.
  std::string str() const;

  /// Monic m-th cyclotomic polynomial over Z (cached).
  static const std::vector<mpz_class>& cyclotomic_poly(unsigned m);

 private:
  CycScalar(unsigned m, std::vector<mpq_class> c) : m_(m), c_(std::move(c)) {}
  CycScalar promoted(unsigned target) const;
  void reduce_mod_phi();
  void trim_to_rational();

  unsigned m_;
  std::vector<mpq_class> c_;  // coefficients of 1, zeta, ..., zeta^{phi(m)-1}
};

inline CycScalar operator*(const mpq_class& r, const CycScalar& x) {
  return CycScalar(r) * x;
}

/// q^e as an exact rational for integer e of either sign.
mpq_class rational_pow(const mpq_class& base, long e);

/// Parse "num", "num/den" (optionally signed).  Throws DomainError on junk.
mpq_class parse_rational(const std::string& s);

}  // namespace u21

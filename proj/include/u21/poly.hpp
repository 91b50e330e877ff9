#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "u21/cyclotomic.hpp"

namespace u21 {

/// Indeterminates of the parameter field Q(nu, lambda, a, q).
enum class Var : int { nu = 0, lambda = 1, a = 2, q = 3 };

constexpr const char* var_name(Var v) {
  switch (v) {
    case Var::nu: return "nu";
    case Var::lambda: return "lambda";
    case Var::a: return "a";
    case Var::q: return "q";
  }
  return "?";
}

/// Monomial nu^e0 lambda^e1 a^e2 q^e3.
struct Mono {
  std::array<int, 4> e{0, 0, 0, 0};
  bool operator<(const Mono& o) const;
  bool operator==(const Mono& o) const { return e == o.e; }
  bool divides(const Mono& o) const;
  Mono operator*(const Mono& o) const;
  Mono operator/(const Mono& o) const;  // requires divisibility
  long total_degree() const { return e[0] + e[1] + e[2] + e[3]; }
};

/// Polynomial in (nu, lambda, a, q) with CycScalar coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const CycScalar& c);
  explicit Poly(long n) : Poly(CycScalar(n)) {}
  static Poly variable(Var v);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  CycScalar constant_value() const;  // requires is_constant

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Quotient when the division is exact, nullopt otherwise.
  std::optional<Poly> exact_divide(const Poly& d) const;

  /// Componentwise minimum exponent vector over all terms.
  Mono monomial_content() const;
  Poly shift_down(const Mono& m) const;  // divide by a monomial

  /// Leading term in the monomial order.
  std::pair<Mono, CycScalar> leading() const;

  Poly substitute(const std::map<Var, CycScalar>& values) const;

  const std::map<Mono, CycScalar>& terms() const { return terms_; }
  std::string str() const;

 private:
  void add_term(const Mono& m, const CycScalar& c);
  std::map<Mono, CycScalar> terms_;
};

/// Element of the rational-function field Q(nu, lambda, a, q) (with
/// cyclotomic constants).  Stored as num/den with light canonicalization:
/// exact cancellation when one side divides the other, common monomial and
/// scalar content stripped, denominator's leading coefficient fixed to 1.
/// Equality is decided exactly by cross-multiplication.
class ParamScalar {
 public:
  ParamScalar() : num_(), den_(CycScalar(1)) {}
  ParamScalar(long n) : num_(CycScalar(n)), den_(CycScalar(1)) {}
  explicit ParamScalar(const CycScalar& c) : num_(c), den_(CycScalar(1)) {}
  explicit ParamScalar(const mpq_class& r) : ParamScalar(CycScalar(r)) {}
  ParamScalar(Poly num, Poly den);

  static ParamScalar variable(Var v) {
    return ParamScalar(Poly::variable(v), Poly(CycScalar(1)));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  CycScalar constant_value() const;

  ParamScalar operator-() const;
  ParamScalar operator+(const ParamScalar& o) const;
  ParamScalar operator-(const ParamScalar& o) const;
  ParamScalar operator*(const ParamScalar& o) const;
  ParamScalar operator/(const ParamScalar& o) const;
  ParamScalar inverse() const;
  ParamScalar pow(long e) const;

  ParamScalar& operator+=(const ParamScalar& o) { return *this = *this + o; }
  ParamScalar& operator-=(const ParamScalar& o) { return *this = *this - o; }
  ParamScalar& operator*=(const ParamScalar& o) { return *this = *this * o; }

  bool operator==(const ParamScalar& o) const;
  bool operator!=(const ParamScalar& o) const { return !(*this == o); }

  /// Substitute exact values for a subset of the indeterminates.
  ParamScalar specialize(const std::map<Var, CycScalar>& values) const;

  std::string str() const;

 private:
  void normalize();
  Poly num_, den_;
};

// Convenient symbols.
ParamScalar ps_nu();
ParamScalar ps_lambda();
ParamScalar ps_a();
ParamScalar ps_q();

}  // namespace u21

#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "u21/cyclotomic.hpp"

namespace u21 {

/// Raised when a truncated computation no longer carries enough digits to
/// answer the question asked of it.  Never degrades to a wrong answer.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a verified reconstruction fails; indicates a bug, not bad
/// input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct PrecisionContext;
using Ctx = std::shared_ptr<const PrecisionContext>;

/// Fixed arithmetic environment: odd prime residue cardinality q = p,
/// working precision M in pi-adic digits, and the non-square unit eps
/// defining E = F[sqrt(eps)].
struct PrecisionContext {
  long p;
  unsigned M;
  long eps;  // least positive quadratic non-residue mod p
  mpz_class p_mpz;
  std::vector<mpz_class> ppow;  // p^0 .. p^M

  const mpz_class& pk(unsigned k) const { return ppow.at(k); }
};

/// Build an immutable context.  Rejects p = 2 and composite p; M >= 4.
Ctx context_new(long p, unsigned M = 24);

/// Element of F = Q_p known to finite precision.  Three states:
///   - exact zero,
///   - unit form: pi^val * u with u invertible mod p^prec (prec >= 1),
///   - inexact zero O(pi^val): all digits cancelled, only a lower bound on
///     the valuation is known.  Using such an element where digits are
///     required raises PrecisionError.
class LocalElem {
 public:
  enum class Kind { Zero, Unit, Inexact };

  LocalElem() : kind_(Kind::Zero) {}

  static LocalElem zero(const Ctx& ctx);
  static LocalElem from_int(const Ctx& ctx, const mpz_class& n);
  static LocalElem from_rational(const Ctx& ctx, const mpq_class& r);
  static LocalElem pi_pow(const Ctx& ctx, long k);
  static LocalElem inexact_zero(const Ctx& ctx, long val_bound);

  const Ctx& ctx() const { return ctx_; }
  Kind kind() const { return kind_; }
  bool is_exact_zero() const { return kind_ == Kind::Zero; }
  /// Indistinguishable from zero at the known precision.
  bool is_zero_at_precision() const { return kind_ != Kind::Unit; }

  /// Exact valuation; PrecisionError on an inexact zero, DomainError on an
  /// exact zero.
  long val() const;
  unsigned prec() const;
  /// Decides val >= k; PrecisionError when undecidable.
  bool has_val_at_least(long k) const;

  LocalElem operator-() const;
  LocalElem operator+(const LocalElem& o) const;
  LocalElem operator-(const LocalElem& o) const { return *this + (-o); }
  LocalElem operator*(const LocalElem& o) const;
  LocalElem inverse() const;
  LocalElem scale_by_pi_power(long k) const;

  /// Canonical residue of x mod pi^k in [0, p^k) for x with val >= 0.
  mpz_class residue(unsigned k) const;

  /// |x|_F = q^{-val}; DomainError on exact zero.
  mpq_class abs_value() const;

  std::string str() const;

 private:
  LocalElem(Ctx ctx, Kind kind, long val, unsigned prec, mpz_class unit)
      : ctx_(std::move(ctx)), kind_(kind), val_(val), prec_(prec),
        unit_(std::move(unit)) {}
  void normalize_unit();

  Ctx ctx_;
  Kind kind_ = Kind::Zero;
  long val_ = 0;       // valuation (Unit) or lower bound (Inexact)
  unsigned prec_ = 0;  // known unit digits (Unit only)
  mpz_class unit_;     // in (Z/p^prec)^x (Unit only)
};

/// Element a + b*sqrt(eps) of the unramified quadratic extension E.
class ExtElem {
 public:
  ExtElem() = default;
  ExtElem(LocalElem a, LocalElem b) : a_(std::move(a)), b_(std::move(b)) {}

  static ExtElem zero(const Ctx& ctx);
  static ExtElem one(const Ctx& ctx);
  static ExtElem from_local(const LocalElem& a);
  static ExtElem from_int(const Ctx& ctx, const mpz_class& n);
  static ExtElem from_rational(const Ctx& ctx, const mpq_class& r);
  /// a + b*sqrt(eps) from rational coordinates.
  static ExtElem from_pair(const Ctx& ctx, const mpq_class& a,
                           const mpq_class& b);
  static ExtElem pi_pow(const Ctx& ctx, long k);
  static ExtElem sqrt_eps(const Ctx& ctx);

  const LocalElem& re() const { return a_; }
  const LocalElem& im() const { return b_; }
  const Ctx& ctx() const;

  bool is_exact_zero() const;
  bool is_zero_at_precision() const;
  bool is_in_F() const { return b_.is_zero_at_precision(); }

  /// val(a + b sqrt(eps)) = min(val a, val b); E/F is unramified.
  long val() const;
  bool has_val_at_least(long k) const;

  ExtElem conj() const;
  LocalElem norm() const;   // x * conj(x), lands in F
  LocalElem trace() const;  // x + conj(x), lands in F

  ExtElem operator-() const;
  ExtElem operator+(const ExtElem& o) const;
  ExtElem operator-(const ExtElem& o) const;
  ExtElem operator*(const ExtElem& o) const;
  ExtElem operator*(const LocalElem& o) const;
  ExtElem inverse() const;
  ExtElem scale_by_pi_power(long k) const;

  /// |x|_E = q^{-2 val}.
  mpq_class abs_value() const;

  /// Canonical residue pair (a mod pi^k, b mod pi^k).
  std::pair<mpz_class, mpz_class> residue(unsigned k) const;

  std::string str() const;

 private:
  LocalElem a_, b_;
};

/// True when x - y cannot be distinguished from 0 at the working precision.
bool equal_at_precision(const LocalElem& x, const LocalElem& y);
bool equal_at_precision(const ExtElem& x, const ExtElem& y);

enum class Field { F, E };

/// Representatives of p^lo / p^hi, q^(hi-lo) of them over F and
/// q^(2(hi-lo)) over E, always including 0.
std::vector<ExtElem> residue_transversal(const Ctx& ctx, Field field, long lo,
                                         long hi);

/// Exact value of sum psi_E(y) over y in p_E^lo / o_E, in Q(zeta_p).
/// psi_E has conductor o_E: zeta_p^(residue-field trace).  Supported for
/// lo in {-1, 0} only.
CycScalar additive_char_sum(const Ctx& ctx, long lo);

}  // namespace u21

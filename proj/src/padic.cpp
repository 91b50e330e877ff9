#include "u21/padic.hpp"

#include <algorithm>
#include <sstream>

namespace u21 {

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long least_nonresidue(long p) {
  std::vector<bool> sq(p, false);
  for (long x = 1; x < p; ++x) sq[(x * x) % p] = true;
  for (long r = 2; r < p; ++r)
    if (!sq[r]) return r;
  throw DomainError("no quadratic non-residue found");
}

void check_same_ctx(const Ctx& a, const Ctx& b) {
  if (a.get() != b.get())
    throw DomainError("elements from different precision contexts");
}

}  // namespace

Ctx context_new(long p, unsigned M) {
  if (p == 2) throw DomainError("residual characteristic two is not supported");
  if (!is_prime(p)) throw DomainError("p must be an odd prime");
  if (M < 4) throw DomainError("precision must be at least 4");
  auto ctx = std::make_shared<PrecisionContext>();
  ctx->p = p;
  ctx->M = M;
  ctx->eps = least_nonresidue(p);
  ctx->p_mpz = p;
  ctx->ppow.resize(M + 1);
  ctx->ppow[0] = 1;
  for (unsigned i = 1; i <= M; ++i) ctx->ppow[i] = ctx->ppow[i - 1] * p;
  return ctx;
}

// ---------------------------------------------------------------------------
// LocalElem

LocalElem LocalElem::zero(const Ctx& ctx) {
  return LocalElem(ctx, Kind::Zero, 0, 0, 0);
}

LocalElem LocalElem::inexact_zero(const Ctx& ctx, long val_bound) {
  return LocalElem(ctx, Kind::Inexact, val_bound, 0, 0);
}

void LocalElem::normalize_unit() {
  // Keep unit_ in [1, p^prec) and invertible; strip p-factors into val_.
  mpz_class m = ctx_->pk(prec_);
  unit_ = ((unit_ % m) + m) % m;
  if (unit_ == 0) {
    kind_ = Kind::Inexact;
    val_ = val_ + prec_;
    prec_ = 0;
    unit_ = 0;
    return;
  }
  while (mpz_divisible_p(unit_.get_mpz_t(), ctx_->p_mpz.get_mpz_t())) {
    unit_ /= ctx_->p;
    ++val_;
    --prec_;
  }
}

LocalElem LocalElem::from_int(const Ctx& ctx, const mpz_class& n) {
  if (n == 0) return zero(ctx);
  LocalElem x(ctx, Kind::Unit, 0, ctx->M, n % ctx->pk(ctx->M));
  x.normalize_unit();
  if (x.kind_ == Kind::Inexact)
    throw PrecisionError("integer is divisible by p^M; raise the precision");
  return x;
}

LocalElem LocalElem::from_rational(const Ctx& ctx, const mpq_class& r) {
  if (r == 0) return zero(ctx);
  mpz_class num = r.get_num(), den = r.get_den();
  long v = 0;
  while (mpz_divisible_p(num.get_mpz_t(), ctx->p_mpz.get_mpz_t())) {
    num /= ctx->p;
    ++v;
  }
  while (mpz_divisible_p(den.get_mpz_t(), ctx->p_mpz.get_mpz_t())) {
    den /= ctx->p;
    --v;
  }
  const mpz_class& m = ctx->pk(ctx->M);
  mpz_class den_inv;
  if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw InternalError("denominator not invertible mod p^M");
  LocalElem x(ctx, Kind::Unit, v, ctx->M, num * den_inv % m);
  x.normalize_unit();
  if (x.kind_ != Kind::Unit)
    throw InternalError("from_rational produced a non-unit");
  return x;
}

LocalElem LocalElem::pi_pow(const Ctx& ctx, long k) {
  return LocalElem(ctx, Kind::Unit, k, ctx->M, 1);
}

long LocalElem::val() const {
  if (kind_ == Kind::Zero) throw DomainError("valuation of exact zero");
  if (kind_ == Kind::Inexact)
    throw PrecisionError("valuation undecidable: all known digits cancelled");
  return val_;
}

unsigned LocalElem::prec() const { return prec_; }

bool LocalElem::has_val_at_least(long k) const {
  switch (kind_) {
    case Kind::Zero:
      return true;
    case Kind::Unit:
      return val_ >= k;
    case Kind::Inexact:
      if (val_ >= k) return true;
      throw PrecisionError("val >= " + std::to_string(k) +
                           " undecidable at O(pi^" + std::to_string(val_) +
                           ")");
  }
  return false;
}

LocalElem LocalElem::operator-() const {
  if (kind_ != Kind::Unit) return *this;
  LocalElem r = *this;
  r.unit_ = ctx_->pk(prec_) - unit_;
  return r;
}

LocalElem LocalElem::operator+(const LocalElem& o) const {
  if (kind_ == Kind::Zero) return o;
  if (o.kind_ == Kind::Zero) return *this;
  check_same_ctx(ctx_, o.ctx_);
  // Known modulo pi^m where m = min over operands of (val + prec).
  auto known_to = [](const LocalElem& x) {
    return x.kind_ == Kind::Unit ? x.val_ + (long)x.prec_ : x.val_;
  };
  long m = std::min(known_to(*this), known_to(o));
  if (kind_ != Kind::Unit && o.kind_ != Kind::Unit)
    return inexact_zero(ctx_, m);
  if (kind_ != Kind::Unit || o.kind_ != Kind::Unit) {
    const LocalElem& u = kind_ == Kind::Unit ? *this : o;
    if (u.val_ >= m) return inexact_zero(ctx_, m);
    LocalElem r(ctx_, Kind::Unit, u.val_, (unsigned)(m - u.val_),
                u.unit_ % ctx_->pk((unsigned)(m - u.val_)));
    r.normalize_unit();
    return r;
  }
  long v = std::min(val_, o.val_);
  if (m - v <= 0) return inexact_zero(ctx_, m);
  unsigned rp = (unsigned)(m - v);
  const mpz_class& mod = ctx_->pk(rp);
  // A summand shifted past the result precision contributes nothing.
  auto shifted = [&](const LocalElem& x) -> mpz_class {
    unsigned shift = (unsigned)(x.val_ - v);
    if (shift >= rp) return 0;
    return x.unit_ * ctx_->pk(shift) % mod;
  };
  LocalElem r(ctx_, Kind::Unit, v, rp, shifted(*this) + shifted(o));
  r.normalize_unit();
  return r;
}

LocalElem LocalElem::operator*(const LocalElem& o) const {
  if (kind_ == Kind::Zero || o.kind_ == Kind::Zero)
    return kind_ == Kind::Zero ? *this : o;
  check_same_ctx(ctx_, o.ctx_);
  if (kind_ != Kind::Unit || o.kind_ != Kind::Unit) {
    long v = val_ + o.val_;  // lower bounds add
    return inexact_zero(ctx_, v);
  }
  unsigned rp = std::min(prec_, o.prec_);
  LocalElem r(ctx_, Kind::Unit, val_ + o.val_, rp,
              unit_ * o.unit_ % ctx_->pk(rp));
  return r;
}

LocalElem LocalElem::inverse() const {
  if (kind_ == Kind::Zero) throw DomainError("division by exact zero");
  if (kind_ == Kind::Inexact)
    throw PrecisionError("cannot invert a value with no known digits");
  mpz_class inv;
  const mpz_class& m = ctx_->pk(prec_);
  if (mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), m.get_mpz_t()) == 0)
    throw InternalError("unit not invertible");
  return LocalElem(ctx_, Kind::Unit, -val_, prec_, inv);
}

LocalElem LocalElem::scale_by_pi_power(long k) const {
  if (kind_ == Kind::Zero) return *this;
  LocalElem r = *this;
  r.val_ += k;
  return r;
}

mpz_class LocalElem::residue(unsigned k) const {
  if (kind_ == Kind::Zero) return 0;
  if (kind_ == Kind::Inexact) {
    if (val_ >= (long)k) return 0;
    throw PrecisionError("residue undecidable");
  }
  if (val_ < 0) throw DomainError("residue of a non-integral element");
  if (val_ >= (long)k) return 0;
  if (val_ + (long)prec_ < (long)k)
    throw PrecisionError("not enough digits for residue mod pi^" +
                         std::to_string(k));
  return unit_ * ctx_->pk((unsigned)val_) % ctx_->pk(k);
}

mpq_class LocalElem::abs_value() const {
  return rational_pow(mpq_class(ctx_->p), -val());
}

std::string LocalElem::str() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Zero:
      os << "0";
      break;
    case Kind::Inexact:
      os << "O(pi^" << val_ << ")";
      break;
    case Kind::Unit:
      os << unit_.get_str();
      if (val_ != 0) os << "*pi^" << val_;
      os << " + O(pi^" << val_ + (long)prec_ << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// ExtElem

ExtElem ExtElem::zero(const Ctx& ctx) {
  return ExtElem(LocalElem::zero(ctx), LocalElem::zero(ctx));
}
ExtElem ExtElem::one(const Ctx& ctx) {
  return ExtElem(LocalElem::from_int(ctx, 1), LocalElem::zero(ctx));
}
ExtElem ExtElem::from_local(const LocalElem& a) {
  return ExtElem(a, LocalElem::zero(a.ctx()));
}
ExtElem ExtElem::from_int(const Ctx& ctx, const mpz_class& n) {
  return from_local(n == 0 ? LocalElem::zero(ctx) : LocalElem::from_int(ctx, n));
}
ExtElem ExtElem::from_rational(const Ctx& ctx, const mpq_class& r) {
  return from_local(r == 0 ? LocalElem::zero(ctx)
                           : LocalElem::from_rational(ctx, r));
}
ExtElem ExtElem::from_pair(const Ctx& ctx, const mpq_class& a,
                           const mpq_class& b) {
  return ExtElem(a == 0 ? LocalElem::zero(ctx) : LocalElem::from_rational(ctx, a),
                 b == 0 ? LocalElem::zero(ctx) : LocalElem::from_rational(ctx, b));
}
ExtElem ExtElem::pi_pow(const Ctx& ctx, long k) {
  return from_local(LocalElem::pi_pow(ctx, k));
}
ExtElem ExtElem::sqrt_eps(const Ctx& ctx) {
  return ExtElem(LocalElem::zero(ctx), LocalElem::from_int(ctx, 1));
}

const Ctx& ExtElem::ctx() const {
  return a_.ctx() ? a_.ctx() : b_.ctx();
}

bool ExtElem::is_exact_zero() const {
  return a_.is_exact_zero() && b_.is_exact_zero();
}
bool ExtElem::is_zero_at_precision() const {
  return a_.is_zero_at_precision() && b_.is_zero_at_precision();
}

long ExtElem::val() const {
  // min(val a, val b) with honest handling of inexact parts.
  bool au = a_.kind() == LocalElem::Kind::Unit;
  bool bu = b_.kind() == LocalElem::Kind::Unit;
  if (au && bu) return std::min(a_.val(), b_.val());
  if (!au && !bu) {
    if (a_.is_exact_zero() && b_.is_exact_zero())
      throw DomainError("valuation of exact zero");
    throw PrecisionError("valuation undecidable: no known digits");
  }
  const LocalElem& unit = au ? a_ : b_;
  const LocalElem& other = au ? b_ : a_;
  long v = unit.val();
  // An inexact component hiding a smaller valuation makes val undecidable;
  // has_val_at_least throws in exactly that case.
  other.has_val_at_least(v);
  return v;
}

bool ExtElem::has_val_at_least(long k) const {
  return a_.has_val_at_least(k) && b_.has_val_at_least(k);
}

ExtElem ExtElem::conj() const { return ExtElem(a_, -b_); }

LocalElem ExtElem::norm() const {
  // a^2 - eps b^2
  const Ctx& c = ctx();
  LocalElem eps = LocalElem::from_int(c, c->eps);
  return a_ * a_ - eps * (b_ * b_);
}

LocalElem ExtElem::trace() const { return a_ + a_; }

ExtElem ExtElem::operator-() const { return ExtElem(-a_, -b_); }
ExtElem ExtElem::operator+(const ExtElem& o) const {
  return ExtElem(a_ + o.a_, b_ + o.b_);
}
ExtElem ExtElem::operator-(const ExtElem& o) const {
  return ExtElem(a_ - o.a_, b_ - o.b_);
}
ExtElem ExtElem::operator*(const ExtElem& o) const {
  const Ctx& c = ctx();
  LocalElem eps = LocalElem::from_int(c, c->eps);
  return ExtElem(a_ * o.a_ + eps * (b_ * o.b_), a_ * o.b_ + b_ * o.a_);
}
ExtElem ExtElem::operator*(const LocalElem& o) const {
  return ExtElem(a_ * o, b_ * o);
}

ExtElem ExtElem::inverse() const {
  LocalElem n = norm();
  if (n.is_exact_zero()) throw DomainError("division by exact zero");
  LocalElem ninv = n.inverse();
  return ExtElem(a_ * ninv, (-b_) * ninv);
}

ExtElem ExtElem::scale_by_pi_power(long k) const {
  return ExtElem(a_.scale_by_pi_power(k), b_.scale_by_pi_power(k));
}

mpq_class ExtElem::abs_value() const {
  return rational_pow(mpq_class(ctx()->p), -2 * val());
}

std::pair<mpz_class, mpz_class> ExtElem::residue(unsigned k) const {
  return {a_.residue(k), b_.residue(k)};
}

std::string ExtElem::str() const {
  return "(" + a_.str() + ") + (" + b_.str() + ")*sqrt(eps)";
}

bool equal_at_precision(const LocalElem& x, const LocalElem& y) {
  return (x - y).is_zero_at_precision();
}
bool equal_at_precision(const ExtElem& x, const ExtElem& y) {
  return (x - y).is_zero_at_precision();
}

// ---------------------------------------------------------------------------
// Transversals and character sums

std::vector<ExtElem> residue_transversal(const Ctx& ctx, Field field, long lo,
                                         long hi) {
  if (lo >= hi) throw DomainError("residue_transversal requires lo < hi");
  unsigned k = (unsigned)(hi - lo);
  if (k > ctx->M) throw PrecisionError("transversal width exceeds precision");
  std::vector<ExtElem> out;
  mpz_class bound = ctx->pk(k);
  if (field == Field::F) {
    out.reserve(mpz_get_ui(bound.get_mpz_t()));
    for (mpz_class c = 0; c < bound; ++c) {
      ExtElem x = c == 0 ? ExtElem::zero(ctx)
                         : ExtElem::from_int(ctx, c).scale_by_pi_power(lo);
      out.push_back(std::move(x));
    }
  } else {
    for (mpz_class c1 = 0; c1 < bound; ++c1)
      for (mpz_class c2 = 0; c2 < bound; ++c2) {
        LocalElem a = c1 == 0 ? LocalElem::zero(ctx)
                              : LocalElem::from_int(ctx, c1)
                                    .scale_by_pi_power(lo);
        LocalElem b = c2 == 0 ? LocalElem::zero(ctx)
                              : LocalElem::from_int(ctx, c2)
                                    .scale_by_pi_power(lo);
        out.emplace_back(std::move(a), std::move(b));
      }
  }
  return out;
}

CycScalar additive_char_sum(const Ctx& ctx, long lo) {
  if (lo == 0) return CycScalar(1);  // single class, psi_E trivial on o_E
  if (lo != -1)
    throw DomainError("additive_char_sum: only p_E^{-1}/o_E is supported");
  // psi_E(y) = zeta_p^(tr(pi*y mod p)); tr(c1 + c2 s) = 2 c1 in F_p.
  CycScalar sum(0);
  for (long c1 = 0; c1 < ctx->p; ++c1)
    for (long c2 = 0; c2 < ctx->p; ++c2)
      sum += CycScalar::root_of_unity((unsigned)ctx->p, 2 * c1);
  return sum;
}

}  // namespace u21

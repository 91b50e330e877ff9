#include "u21/group.hpp"

#include <sstream>

namespace u21 {

namespace {

Mat3 form_J(const Ctx& ctx) {
  Mat3 j = Mat3::zero(ctx);
  ExtElem one = ExtElem::one(ctx);
  j.m[0][2] = one;
  j.m[1][1] = one;
  j.m[2][0] = one;
  return j;
}

LocalElem half(const Ctx& ctx) {
  return LocalElem::from_rational(ctx, mpq_class(1, 2));
}

}  // namespace

Mat3 Mat3::identity(const Ctx& ctx) {
  Mat3 r = zero(ctx);
  for (int i = 0; i < 3; ++i) r.m[i][i] = ExtElem::one(ctx);
  return r;
}

Mat3 Mat3::zero(const Ctx& ctx) {
  Mat3 r;
  for (auto& row : r.m)
    for (auto& e : row) e = ExtElem::zero(ctx);
  return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r = zero(ctx());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ExtElem acc = ExtElem::zero(ctx());
      for (int k = 0; k < 3; ++k) acc = acc + m[i][k] * o.m[k][j];
      r.m[i][j] = acc;
    }
  return r;
}

Mat3 Mat3::conj_transpose() const {
  Mat3 r = zero(ctx());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i].conj();
  return r;
}

ExtElem Mat3::det() const {
  const auto& a = m;
  ExtElem d = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
              a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
              a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  return d;
}

bool equal_at_precision(const Mat3& x, const Mat3& y) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!equal_at_precision(x.m[i][j], y.m[i][j])) return false;
  return true;
}

bool is_in_G(const Mat3& m) {
  Mat3 j = form_J(m.ctx());
  if (!equal_at_precision(m.conj_transpose() * j * m, j)) return false;
  ExtElem d = m.det();
  if (d.is_zero_at_precision()) return false;
  return d.val() == 0;
}

GroupElt GroupElt::from_matrix(const Mat3& mat) {
  if (!is_in_G(mat))
    throw DomainError("matrix does not satisfy the defining form of G");
  return GroupElt(mat);
}

GroupElt GroupElt::inverse() const {
  Mat3 j = form_J(ctx());
  return GroupElt(j * m_.conj_transpose() * j);
}

std::string GroupElt::str() const {
  std::ostringstream os;
  for (int i = 0; i < 3; ++i) {
    os << "[ ";
    for (int j = 0; j < 3; ++j) os << m_.m[i][j].str() << (j < 2 ? " , " : "");
    os << " ]\n";
  }
  return os.str();
}

bool equal_at_precision(const GroupElt& x, const GroupElt& y) {
  return equal_at_precision(x.mat(), y.mat());
}

// ---------------------------------------------------------------------------
// generators

GroupElt identity_elt(const Ctx& ctx) {
  return GroupElt::trusted(Mat3::identity(ctx));
}

GroupElt u_elt(const ExtElem& x, const LocalElem& y) {
  const Ctx& ctx = x.ctx() ? x.ctx() : y.ctx();
  Mat3 m = Mat3::identity(ctx);
  ExtElem y_eps(LocalElem::zero(ctx), y);
  m.m[0][1] = x;
  m.m[0][2] = y_eps - x * x.conj() * half(ctx);
  m.m[1][2] = -x.conj();
  return GroupElt::from_matrix(m);
}

GroupElt bold_u_elt(const ExtElem& x, const ExtElem& y) {
  const Ctx& ctx = x.ctx() ? x.ctx() : y.ctx();
  ExtElem cond = ExtElem::from_local(y.trace()) + x * x.conj();
  if (!cond.is_zero_at_precision())
    throw DomainError("bold u: y + conj(y) + x conj(x) != 0");
  Mat3 m = Mat3::identity(ctx);
  m.m[0][1] = x;
  m.m[0][2] = y;
  m.m[1][2] = -x.conj();
  return GroupElt::from_matrix(m);
}

namespace {
GroupElt transpose_of(const GroupElt& g) {
  Mat3 t = Mat3::zero(g.ctx());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.m[i][j] = g.mat().m[j][i];
  return GroupElt::from_matrix(t);
}
}  // namespace

GroupElt u_hat_elt(const ExtElem& x, const LocalElem& y) {
  return transpose_of(u_elt(x, y));
}

GroupElt bold_u_hat_elt(const ExtElem& x, const ExtElem& y) {
  return transpose_of(bold_u_elt(x, y));
}

GroupElt torus_elt(const ExtElem& a) {
  const Ctx& ctx = a.ctx();
  Mat3 m = Mat3::zero(ctx);
  m.m[0][0] = a;
  m.m[1][1] = ExtElem::one(ctx);
  m.m[2][2] = a.conj().inverse();
  return GroupElt::from_matrix(m);
}

GroupElt diag_elt(const ExtElem& alpha, const ExtElem& beta) {
  const Ctx& ctx = alpha.ctx();
  if (!equal_at_precision(ExtElem::from_local(beta.norm()), ExtElem::one(ctx)))
    throw DomainError("diag: middle entry must have norm one");
  Mat3 m = Mat3::zero(ctx);
  m.m[0][0] = alpha;
  m.m[1][1] = beta;
  m.m[2][2] = alpha.conj().inverse();
  return GroupElt::from_matrix(m);
}

GroupElt center_elt(const ExtElem& beta) {
  const Ctx& ctx = beta.ctx();
  if (!equal_at_precision(ExtElem::from_local(beta.norm()), ExtElem::one(ctx)))
    throw DomainError("center: entry must lie in E^1");
  Mat3 m = Mat3::zero(ctx);
  for (int i = 0; i < 3; ++i) m.m[i][i] = beta;
  return GroupElt::from_matrix(m);
}

GroupElt zeta_elt(const Ctx& ctx) { return torus_elt(ExtElem::pi_pow(ctx, 1)); }

GroupElt zeta_pow(const Ctx& ctx, long i) {
  return torus_elt(ExtElem::pi_pow(ctx, i));
}

GroupElt t_w_elt(const Ctx& ctx, long i) {
  Mat3 m = Mat3::zero(ctx);
  m.m[0][2] = ExtElem::pi_pow(ctx, -i);
  m.m[1][1] = ExtElem::one(ctx);
  m.m[2][0] = ExtElem::pi_pow(ctx, i);
  return GroupElt::from_matrix(m);
}

GroupElt gamma_elt(const Ctx& ctx, long i) {
  return u_hat_elt(ExtElem::pi_pow(ctx, i), LocalElem::zero(ctx));
}

// ---------------------------------------------------------------------------
// membership

bool is_in_subgroup(const GroupElt& g, const Subgroup& which) {
  const Ctx& ctx = g.ctx();
  auto lower_zero = [&] {
    return g.at(1, 0).is_zero_at_precision() &&
           g.at(2, 0).is_zero_at_precision() &&
           g.at(2, 1).is_zero_at_precision();
  };
  switch (which.tag) {
    case Subgroup::Tag::G:
      return is_in_G(g.mat());
    case Subgroup::Tag::B:
      return lower_zero();
    case Subgroup::Tag::U: {
      ExtElem one = ExtElem::one(ctx);
      return lower_zero() && equal_at_precision(g.at(0, 0), one) &&
             equal_at_precision(g.at(1, 1), one) &&
             equal_at_precision(g.at(2, 2), one);
    }
    case Subgroup::Tag::K: {
      long n = which.n;
      return g.at(0, 0).has_val_at_least(0) && g.at(0, 1).has_val_at_least(0) &&
             g.at(0, 2).has_val_at_least(-n) && g.at(1, 0).has_val_at_least(n) &&
             (g.at(1, 1) - ExtElem::one(ctx)).has_val_at_least(n) &&
             g.at(1, 2).has_val_at_least(0) && g.at(2, 0).has_val_at_least(n) &&
             g.at(2, 1).has_val_at_least(n) && g.at(2, 2).has_val_at_least(0);
    }
    case Subgroup::Tag::Z: {
      long n = which.n;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (i != j && !g.at(i, j).is_zero_at_precision()) return false;
      const ExtElem& b = g.at(0, 0);
      if (!equal_at_precision(b, g.at(1, 1)) ||
          !equal_at_precision(b, g.at(2, 2)))
        return false;
      if (!equal_at_precision(ExtElem::from_local(b.norm()),
                              ExtElem::one(ctx)))
        return false;
      return (b - ExtElem::one(ctx)).has_val_at_least(n);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Borel elements

BorelElt BorelElt::from_group_elt(const GroupElt& g) {
  if (!g.at(1, 0).is_zero_at_precision() ||
      !g.at(2, 0).is_zero_at_precision() ||
      !g.at(2, 1).is_zero_at_precision())
    throw DomainError("BorelElt: matrix is not upper triangular");
  const ExtElem& alpha = g.at(0, 0);
  if (alpha.is_zero_at_precision())
    throw PrecisionError("BorelElt: corner entry has no known digits");
  if (!equal_at_precision(ExtElem::from_local(g.at(1, 1).norm()),
                          ExtElem::one(g.ctx())))
    throw DomainError("BorelElt: middle entry must have norm one");
  if (!equal_at_precision(g.at(2, 2), alpha.conj().inverse()))
    throw DomainError("BorelElt: diagonal violates the unitary constraint");
  return BorelElt(g);
}

mpq_class BorelElt::delta_half() const {
  return rational_pow(mpq_class(g_.ctx()->p), -2 * alpha_val());
}

// ---------------------------------------------------------------------------
// decompositions

namespace {

struct BigCell {
  ExtElem chi, omega;
};

// g lies in B * L(chi, omega) where L is the lower unipotent with
// (2,1) = chi, (3,1) = omega; read off the bottom row.  nullopt when the
// (3,3) entry is exactly zero (outside the big cell).
std::optional<BigCell> extract_big_cell(const GroupElt& g) {
  const ExtElem& r3 = g.at(2, 2);
  if (r3.is_exact_zero()) return std::nullopt;
  if (r3.is_zero_at_precision())
    throw PrecisionError("big cell: bottom corner has no known digits");
  ExtElem r3inv = r3.inverse();
  BigCell bc;
  bc.chi = -(g.at(2, 1) * r3inv).conj();
  bc.omega = g.at(2, 0) * r3inv;
  ExtElem cond =
      ExtElem::from_local(bc.omega.trace()) + bc.chi * bc.chi.conj();
  if (!cond.is_zero_at_precision())
    throw InternalError("big cell: input violates the defining form");
  return bc;
}

// One reduce stage: h = b * L with L = L(chi, omega) in K_n.
std::optional<std::pair<BorelElt, GroupElt>> reduce_stage(const GroupElt& h,
                                                          long n) {
  auto bc = extract_big_cell(h);
  if (!bc) return std::nullopt;
  if (!bc->chi.has_val_at_least(n) || !bc->omega.has_val_at_least(n))
    return std::nullopt;
  GroupElt L = bold_u_hat_elt(bc->chi, bc->omega);
  GroupElt braw = GroupElt::trusted(h.mat() * L.inverse().mat());
  return std::make_pair(BorelElt::from_group_elt(braw), L);
}

}  // namespace

std::optional<std::pair<BorelElt, GroupElt>> reduce_bk(const GroupElt& g,
                                                       long n) {
  if (n < 0) throw DomainError("reduce_bk: level must be non-negative");
  const Ctx& ctx = g.ctx();
  if (auto s = reduce_stage(g, n)) {
    if (!equal_at_precision(GroupElt::trusted(s->first.elt().mat() *
                                              s->second.mat()),
                            g))
      throw InternalError("reduce_bk: reconstruction failed");
    return s;
  }
  GroupElt tn = t_w_elt(ctx, n);
  if (auto s = reduce_stage(g * tn, n)) {
    GroupElt k = GroupElt::trusted(s->second.mat() * tn.mat());  // t_n^2 = e
    if (!equal_at_precision(
            GroupElt::trusted(s->first.elt().mat() * k.mat()), g))
      throw InternalError("reduce_bk: reconstruction failed (twisted)");
    return std::make_pair(s->first, k);
  }
  return std::nullopt;
}

std::pair<BorelElt, GroupElt> iwasawa_k0(const GroupElt& g) {
  auto r = reduce_bk(g, 0);
  if (!r)
    throw InternalError("iwasawa_k0: decomposition G = B K_0 not reached");
  return *r;
}

namespace {

// gamma_j = B-part * gamma_{n-j} * K-part: the reflection identity behind
// the coset involution i <-> n-i.  Derived from the bottom-row profile of
// gamma_j t_n, which is L(-2 pi^{n-j}, -2 pi^{2(n-j)}) up to a Borel factor.
std::pair<GroupElt, GroupElt> gamma_flip(const Ctx& ctx, long j, long n) {
  GroupElt tn = t_w_elt(ctx, n);
  GroupElt gt = gamma_elt(ctx, j) * tn;
  ExtElem minus2 = ExtElem::from_int(ctx, -2);
  ExtElem chi0 = minus2.scale_by_pi_power(n - j);
  ExtElem omega0 = minus2.scale_by_pi_power(2 * (n - j));
  GroupElt L0 = bold_u_hat_elt(chi0, omega0);
  GroupElt b0 = GroupElt::trusted(gt.mat() * L0.inverse().mat());
  GroupElt ta = torus_elt(minus2);
  // gamma_j = b0 t(-2)^{-1} gamma_{n-j} t(-2) t_n
  return {GroupElt::trusted(b0.mat() * ta.inverse().mat()),
          GroupElt::trusted(ta.mat() * tn.mat())};
}

struct StripResult {
  long vchi;
  BorelElt b;
  GroupElt k;  // g_route = b gamma_vchi k for the routed element
};

// Normal-form attempt on one element of the big cell: strip the trace-zero
// deviation (needs val(tau) >= n) and conjugate chi to a pi-power.
std::optional<StripResult> strip_to_gamma(const GroupElt& h, long n) {
  auto bc = extract_big_cell(h);
  if (!bc) return std::nullopt;
  const Ctx& ctx = h.ctx();
  ExtElem tau = bc->omega + bc->chi * bc->chi.conj() * half(ctx);
  if (!tau.re().is_zero_at_precision())
    throw InternalError("classify_coset: tau is not trace-zero");
  if (!tau.has_val_at_least(n)) return std::nullopt;

  if (bc->chi.is_zero_at_precision()) {
    if (bc->chi.is_exact_zero())
      throw InternalError(
          "classify_coset: chi = 0 should have reduced into B K_n");
    throw PrecisionError("classify_coset: chi has no known digits");
  }
  long vchi = bc->chi.val();
  if (vchi < 1 || vchi >= n)
    throw InternalError(
        "classify_coset: profile val(chi) = " + std::to_string(vchi) +
        " outside {1..n-1} cannot occur once reduce_bk has failed");

  GroupElt L = bold_u_hat_elt(bc->chi, bc->omega);
  BorelElt b = BorelElt::from_group_elt(
      GroupElt::trusted(h.mat() * L.inverse().mat()));
  GroupElt strip = u_hat_elt(ExtElem::zero(ctx), -tau.im());
  ExtElem a_unit = bc->chi.scale_by_pi_power(-vchi);
  GroupElt ta = torus_elt(a_unit);
  // L strip = t(a)^{-1} gamma_vchi t(a):
  // h = [b t(a)^{-1}] gamma_vchi [t(a) strip^{-1}].
  BorelElt b_final = BorelElt::from_group_elt(
      GroupElt::trusted(b.elt().mat() * ta.inverse().mat()));
  GroupElt k_final =
      GroupElt::trusted(ta.mat() * strip.inverse().mat());
  return StripResult{vchi, b_final, k_final};
}

}  // namespace

std::optional<CosetWitness> classify_coset(const GroupElt& g, long n) {
  if (n < 1) throw DomainError("classify_coset: level must be positive");
  const Ctx& ctx = g.ctx();
  GroupElt gam_n = gamma_elt(ctx, n);

  auto finish = [&](CosetWitness w) {
    GroupElt recon = GroupElt::trusted(w.b.elt().mat() *
                                       gamma_elt(ctx, w.rep_index).mat() *
                                       w.k.mat());
    if (!equal_at_precision(recon, g))
      throw InternalError("classify_coset: witness reconstruction failed");
    return w;
  };

  if (auto bk = reduce_bk(g, n)) {
    GroupElt k = GroupElt::trusted(gam_n.inverse().mat() * bk->second.mat());
    return finish(CosetWitness{n, bk->first, k});
  }

  // Outside B K_n: normalize inside the gamma classes.  The class of
  // gamma_i equals that of gamma_{n-i} (right-multiplying by t_n reflects
  // the profile), so both the plain and the t_n-twisted elements are tried
  // and the smaller index is the canonical representative.
  GroupElt tn = t_w_elt(ctx, n);
  std::optional<StripResult> best;
  GroupElt best_twist = identity_elt(ctx);
  for (int use_twist = 0; use_twist < 2; ++use_twist) {
    GroupElt h = use_twist ? g * tn : g;
    auto r = strip_to_gamma(h, n);
    if (r && (!best || r->vchi < best->vchi)) {
      best = r;
      best_twist = use_twist ? tn : identity_elt(ctx);
    }
  }
  if (!best) return std::nullopt;  // no normal form reached: Other

  // g twist = b gamma_v k  =>  g = b gamma_v (k twist^{-1}); t_n^2 = e.
  GroupElt k_total = GroupElt::trusted(best->k.mat() * best_twist.mat());
  long v = best->vchi;
  if (v > n - v) {
    auto [bflip, kflip] = gamma_flip(ctx, v, n);
    return finish(CosetWitness{
        n - v,
        BorelElt::from_group_elt(
            GroupElt::trusted(best->b.elt().mat() * bflip.mat())),
        GroupElt::trusted(kflip.mat() * k_total.mat())});
  }
  return finish(CosetWitness{v, best->b, k_total});
}

// ---------------------------------------------------------------------------
// identity catalog

const char* identity_name(Identity which) {
  switch (which) {
    case Identity::I1: return "I1";
    case Identity::I2: return "I2";
    case Identity::I3: return "I3";
    case Identity::I4: return "I4";
    case Identity::I5: return "I5";
    case Identity::I6: return "I6";
    case Identity::I7: return "I7";
  }
  return "?";
}

namespace {

IdentityCheck compare_elts(const GroupElt& lhs, const GroupElt& rhs,
                           const std::string& label) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!equal_at_precision(lhs.at(i, j), rhs.at(i, j)))
        return {false, label + ": entry (" + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + ") differs: " +
                           lhs.at(i, j).str() + " vs " + rhs.at(i, j).str()};
  return {true, ""};
}

GroupElt gamma_prime(const Ctx& ctx) {
  return u_elt(ExtElem::pi_pow(ctx, -1).operator-(), LocalElem::zero(ctx));
}

}  // namespace

IdentityCheck verify_identity(const Ctx& ctx, Identity which,
                              const IdentityParams& p) {
  switch (which) {
    case Identity::I1: {
      // bold uhat(y, x) = bold u(-conj(y)/conj(x), 1/x)
      //                   * diag(pi^{N+1}/conj(x), -conj(x)/x, pi^{-1-N} x)
      //                   * t_{N+1} * bold u(-conj(y)/x, 1/x),
      // with the trailing pair landing in K_{N+1}.
      const ExtElem& y = p.x;
      const ExtElem& x = p.xe;
      ExtElem xinv = x.inverse();
      GroupElt lhs = bold_u_hat_elt(y, x);
      GroupElt ub = bold_u_elt(-(y.conj() * x.conj().inverse()), xinv);
      GroupElt d = diag_elt(ExtElem::pi_pow(ctx, p.N + 1) * x.conj().inverse(),
                            -(x.conj() * xinv));
      GroupElt tn1 = t_w_elt(ctx, p.N + 1);
      GroupElt uk = bold_u_elt(-(y.conj() * xinv), xinv);
      GroupElt rhs = ub * d * tn1 * uk;
      IdentityCheck eq = compare_elts(lhs, rhs, "I1");
      if (!eq.ok) return eq;
      if (!is_in_subgroup(tn1 * uk, Subgroup::K(p.N + 1)))
        return {false, "I1: trailing factor not in K_{N+1}"};
      return {true, ""};
    }
    case Identity::I2: {
      GroupElt lhs = zeta_pow(ctx, p.i) * u_elt(p.x, p.y);
      GroupElt rhs = u_elt(p.x.scale_by_pi_power(p.i),
                           p.y.scale_by_pi_power(2 * p.i)) *
                     zeta_pow(ctx, p.i);
      return compare_elts(lhs, rhs, "I2");
    }
    case Identity::I3: {
      LocalElem z = LocalElem::zero(ctx);
      GroupElt lhs = zeta_pow(ctx, p.i + 1) * u_elt(p.x, z);
      GroupElt rhs =
          u_elt(p.x.scale_by_pi_power(p.i + 1), z) * zeta_pow(ctx, p.i + 1);
      return compare_elts(lhs, rhs, "I3");
    }
    case Identity::I4: {
      GroupElt t2 = t_w_elt(ctx, 2);
      GroupElt lhs = t2 * gamma_elt(ctx, 1) * t2;
      return compare_elts(lhs, gamma_prime(ctx), "I4");
    }
    case Identity::I5: {
      GroupElt gp = gamma_prime(ctx);
      GroupElt z = zeta_elt(ctx);
      GroupElt lhs1 = z * gp * z.inverse();
      GroupElt rhs1 = u_elt(-ExtElem::one(ctx), LocalElem::zero(ctx));
      IdentityCheck c1 = compare_elts(lhs1, rhs1, "I5a");
      if (!c1.ok) return c1;
      GroupElt t1 = t_w_elt(ctx, 1);
      return compare_elts(t1 * z.inverse(), z * t1, "I5b");
    }
    case Identity::I6: {
      GroupElt t1 = t_w_elt(ctx, 1);
      GroupElt lhs = t1 * gamma_prime(ctx) * u_elt(ExtElem::zero(ctx), p.y);
      GroupElt rhs =
          u_hat_elt(ExtElem::one(ctx), p.y.scale_by_pi_power(2)) * t1;
      return compare_elts(lhs, rhs, "I6");
    }
    case Identity::I7: {
      const ExtElem& x = p.xe;
      ExtElem w = -(x.conj() * x.inverse());
      bool ok = (w - ExtElem::one(ctx)).has_val_at_least(p.N);
      return {ok, ok ? "" : "I7: -conj(x)/x - 1 has valuation below N"};
    }
  }
  return {false, "unknown identity"};
}

}  // namespace u21

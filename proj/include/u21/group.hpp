#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "u21/padic.hpp"

namespace u21 {

/// 3x3 matrix over E; the raw layer under GroupElt.
struct Mat3 {
  std::array<std::array<ExtElem, 3>, 3> m;

  static Mat3 identity(const Ctx& ctx);
  static Mat3 zero(const Ctx& ctx);
  Mat3 operator*(const Mat3& o) const;
  Mat3 conj_transpose() const;  // entrywise Galois conjugate of the transpose
  ExtElem det() const;
  const Ctx& ctx() const { return m[0][0].ctx(); }
};

bool equal_at_precision(const Mat3& x, const Mat3& y);

/// Element of G = U(2,1): t(conj g) J g = J for the antidiagonal form J.
class GroupElt {
 public:
  GroupElt() = default;

  /// Wraps and verifies the defining condition; DomainError if it fails.
  static GroupElt from_matrix(const Mat3& mat);
  /// Wraps without re-verifying (products of group elements).
  static GroupElt trusted(Mat3 mat) { return GroupElt(std::move(mat)); }

  const Mat3& mat() const { return m_; }
  const ExtElem& at(int i, int j) const { return m_.m[i][j]; }
  const Ctx& ctx() const { return m_.ctx(); }

  GroupElt operator*(const GroupElt& o) const {
    return GroupElt(m_ * o.m_);
  }
  /// g^{-1} = J t(conj g) J, exact for elements of G.
  GroupElt inverse() const;

  std::string str() const;

 private:
  explicit GroupElt(Mat3 m) : m_(std::move(m)) {}
  Mat3 m_;
};

bool equal_at_precision(const GroupElt& x, const GroupElt& y);

// --- named generators ------------------------------------------------------

GroupElt identity_elt(const Ctx& ctx);
/// u(x, y): upper unipotent with (1,2) = x, (1,3) = y*sqrt(eps) - x conj(x)/2.
GroupElt u_elt(const ExtElem& x, const LocalElem& y);
/// bold u(x, y): (1,3) = y with y + conj(y) + x conj(x) = 0 (checked).
GroupElt bold_u_elt(const ExtElem& x, const ExtElem& y);
/// Transposes of the two above (lower unipotent).
GroupElt u_hat_elt(const ExtElem& x, const LocalElem& y);
GroupElt bold_u_hat_elt(const ExtElem& x, const ExtElem& y);
/// t(a) = diag(a, 1, conj(a)^{-1}).
GroupElt torus_elt(const ExtElem& a);
/// diag(alpha, beta, conj(alpha)^{-1}) with norm(beta) = 1 (checked).
GroupElt diag_elt(const ExtElem& alpha, const ExtElem& beta);
/// Central element diag(beta, beta, beta), beta in E^1 (checked).
GroupElt center_elt(const ExtElem& beta);
/// zeta = diag(pi, 1, pi^{-1}).
GroupElt zeta_elt(const Ctx& ctx);
GroupElt zeta_pow(const Ctx& ctx, long i);
/// t_i = antidiag(pi^{-i}, 1, pi^i); t_i^2 = e.
GroupElt t_w_elt(const Ctx& ctx, long i);
/// gamma_i = u_hat(pi^i, 0).
GroupElt gamma_elt(const Ctx& ctx, long i);

// --- subgroup membership ---------------------------------------------------

struct Subgroup {
  enum class Tag { G, B, U, K, Z } tag;
  long n = 0;  // level for K and Z
  static Subgroup G() { return {Tag::G}; }
  static Subgroup B() { return {Tag::B}; }
  static Subgroup U() { return {Tag::U}; }
  static Subgroup K(long n) { return {Tag::K, n}; }
  static Subgroup Z(long n) { return {Tag::Z, n}; }
};

bool is_in_G(const Mat3& m);
bool is_in_subgroup(const GroupElt& g, const Subgroup& which);

// --- Borel elements and decompositions -------------------------------------

/// Upper-triangular element of G with diagonal (alpha, beta, conj(alpha)^{-1}).
class BorelElt {
 public:
  static BorelElt from_group_elt(const GroupElt& g);

  const GroupElt& elt() const { return g_; }
  const ExtElem& alpha() const { return g_.at(0, 0); }
  const ExtElem& beta() const { return g_.at(1, 1); }
  long alpha_val() const { return alpha().val(); }
  /// delta_B(b)^{1/2} = |alpha|_E = q^{-2 val(alpha)}.
  mpq_class delta_half() const;

  BorelElt operator*(const BorelElt& o) const {
    return BorelElt(GroupElt::trusted(g_.mat() * o.elt().mat()));
  }

 private:
  explicit BorelElt(GroupElt g) : g_(std::move(g)) {}
  GroupElt g_;
};

/// g = b k with k in K_n, or absent when no such decomposition exists.
/// Stage 1 eliminates the bottom row with a u_hat factor when
/// val(g31) >= n + val(g33) and val(g32) >= n + val(g33); stage 2 retries on
/// g t_n.  Success is verified by reconstruction.
std::optional<std::pair<BorelElt, GroupElt>> reduce_bk(const GroupElt& g,
                                                       long n);

/// Iwasawa decomposition g = b k, k in K_0; always exists.
std::pair<BorelElt, GroupElt> iwasawa_k0(const GroupElt& g);

/// Verified representative data for the double coset B gamma_i K_n.
/// rep_index = n denotes the identity coset (gamma_n lies in K_n).
struct CosetWitness {
  long rep_index;
  BorelElt b;
  GroupElt k;
};

/// Classifies g into B gamma_i K_n for some i in {1..n}, or returns nullopt
/// ("Other") when the elimination reaches no normal form.  The gamma_0 coset
/// coincides with the identity coset for every n >= 1 and is reported as
/// rep_index = n.  Witnesses reconstruct exactly: g = b gamma_i k.
std::optional<CosetWitness> classify_coset(const GroupElt& g, long n);

// --- proof-identity catalog -------------------------------------------------

enum class Identity { I1, I2, I3, I4, I5, I6, I7 };

struct IdentityParams {
  long N = 1;     // level parameter (I1, I7)
  long i = 1;     // power parameter (I2, I3)
  ExtElem x;      // E-parameter
  LocalElem y;    // F-parameter
  ExtElem xe;     // second E-parameter (I1/I7's x with trace condition)
};

struct IdentityCheck {
  bool ok;
  std::string detail;  // mismatching entry on failure
};

IdentityCheck verify_identity(const Ctx& ctx, Identity which,
                              const IdentityParams& params);

const char* identity_name(Identity which);

}  // namespace u21

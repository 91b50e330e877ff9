#include "u21/cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace u21 {

namespace {

// Divide a monic-divisor integer polynomial: num / den, exact.
std::vector<mpz_class> poly_div_exact(std::vector<mpz_class> num,
                                      const std::vector<mpz_class>& den) {
  std::vector<mpz_class> q(num.size() >= den.size()
                               ? num.size() - den.size() + 1
                               : 0);
  while (num.size() >= den.size()) {
    size_t shift = num.size() - den.size();
    mpz_class c = num.back();  // den is monic
    q[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    while (!num.empty() && num.back() == 0) num.pop_back();
    if (num.empty()) break;
  }
  if (!num.empty()) throw DomainError("cyclotomic: non-exact division");
  return q;
}

}  // namespace

const std::vector<mpz_class>& CycScalar::cyclotomic_poly(unsigned m) {
  static std::map<unsigned, std::vector<mpz_class>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  if (m == 0) throw DomainError("cyclotomic order must be positive");

  // x^m - 1 divided by the product of Phi_d over proper divisors d of m.
  std::vector<mpz_class> num(m + 1);
  num[0] = -1;
  num[m] = 1;
  std::function<const std::vector<mpz_class>&(unsigned)> get =
      [&](unsigned k) -> const std::vector<mpz_class>& {
    auto jt = cache.find(k);
    if (jt != cache.end()) return jt->second;
    std::vector<mpz_class> nk(k + 1);
    nk[0] = -1;
    nk[k] = 1;
    for (unsigned d = 1; d < k; ++d)
      if (k % d == 0) nk = poly_div_exact(std::move(nk), get(d));
    return cache.emplace(k, std::move(nk)).first->second;
  };
  return get(m);
}

CycScalar CycScalar::root_of_unity(unsigned m, long k) {
  if (m == 0) throw DomainError("root_of_unity: order must be positive");
  long kk = ((k % (long)m) + (long)m) % (long)m;
  if (m == 1 || kk == 0) return CycScalar(1);
  const auto& phi = cyclotomic_poly(m);
  size_t deg = phi.size() - 1;
  std::vector<mpq_class> c(std::max<size_t>(deg, kk + 1));
  c[kk] = 1;
  CycScalar z(m, std::move(c));
  z.reduce_mod_phi();
  z.c_.resize(deg);
  z.trim_to_rational();
  return z;
}

void CycScalar::reduce_mod_phi() {
  const auto& phi = cyclotomic_poly(m_);
  size_t deg = phi.size() - 1;
  while (c_.size() > deg) {
    mpq_class lead = c_.back();
    size_t shift = c_.size() - 1 - deg;
    if (lead != 0)
      for (size_t i = 0; i < phi.size(); ++i)
        c_[shift + i] -= lead * mpq_class(phi[i]);
    c_.pop_back();
  }
  c_.resize(deg);
}

void CycScalar::trim_to_rational() {
  if (m_ == 1) {
    c_.resize(1);
    return;
  }
  bool constant = true;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) {
      constant = false;
      break;
    }
  if (constant) {
    mpq_class v = c_.empty() ? mpq_class(0) : c_[0];
    m_ = 1;
    c_.assign(1, v);
  }
}

CycScalar CycScalar::promoted(unsigned target) const {
  if (m_ == target) return *this;
  if (target % m_ != 0) throw DomainError("cyclotomic: bad promotion");
  unsigned step = target / m_;
  const auto& phi = cyclotomic_poly(target);
  size_t deg = phi.size() - 1;
  std::vector<mpq_class> c(std::max<size_t>(deg, (c_.size() - 1) * step + 1));
  for (size_t i = 0; i < c_.size(); ++i) c[i * step] += c_[i];
  CycScalar z(target, std::move(c));
  z.reduce_mod_phi();
  return z;
}

bool CycScalar::is_zero() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const mpq_class& x) { return x == 0; });
}

bool CycScalar::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

mpq_class CycScalar::as_rational() const {
  if (!is_rational()) throw DomainError("CycScalar is not rational");
  return c_.empty() ? mpq_class(0) : c_[0];
}

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycScalar CycScalar::operator+(const CycScalar& o) const {
  if (m_ == 1 && o.m_ == 1) return CycScalar(c_[0] + o.c_[0]);
  unsigned m = std::lcm(m_, o.m_);
  CycScalar x = promoted(m), y = o.promoted(m);
  for (size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
  x.trim_to_rational();
  return x;
}

CycScalar CycScalar::operator-(const CycScalar& o) const { return *this + (-o); }

CycScalar CycScalar::operator*(const CycScalar& o) const {
  if (m_ == 1 && o.m_ == 1) return CycScalar(c_[0] * o.c_[0]);
  unsigned m = std::lcm(m_, o.m_);
  CycScalar x = promoted(m), y = o.promoted(m);
  std::vector<mpq_class> prod(x.c_.size() + y.c_.size() - 1);
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] == 0) continue;
    for (size_t j = 0; j < y.c_.size(); ++j) {
      if (y.c_[j] == 0) continue;
      prod[i + j] += x.c_[i] * y.c_[j];
    }
  }
  CycScalar z(m, std::move(prod));
  z.reduce_mod_phi();
  z.trim_to_rational();
  return z;
}

CycScalar CycScalar::inverse() const {
  if (is_zero()) throw DomainError("CycScalar: division by zero");
  if (m_ == 1) return CycScalar(mpq_class(1) / c_[0]);

  // Extended Euclid for (this, Phi_m) over Q[x].
  using Poly = std::vector<mpq_class>;
  auto trim = [](Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  auto sub_scaled = [](Poly& a, const Poly& b, const mpq_class& c,
                       size_t shift) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift);
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
  };
  const auto& phi_z = cyclotomic_poly(m_);
  Poly r0(phi_z.size());
  for (size_t i = 0; i < phi_z.size(); ++i) r0[i] = mpq_class(phi_z[i]);
  Poly r1 = c_;
  trim(r1);
  Poly s0{}, s1{mpq_class(1)};  // coefficients of this^{-1} track r = s*this mod phi
  while (true) {
    // divide r0 by r1
    Poly rem = r0;
    Poly quo(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      mpq_class c = rem.back() / r1.back();
      size_t shift = rem.size() - r1.size();
      quo[shift] = c;
      sub_scaled(rem, r1, c, shift);
      trim(rem);
      if (rem.size() >= r1.size() && rem.size() && rem.back() == 0) trim(rem);
    }
    Poly s2 = s0;
    // s2 = s0 - quo*s1
    for (size_t i = 0; i < quo.size(); ++i)
      if (quo[i] != 0) sub_scaled(s2, s1, quo[i], i);
    trim(s2);
    if (rem.empty()) {
      // r1 is the gcd: must be a nonzero constant (Phi_m irreducible).
      if (r1.size() != 1)
        throw DomainError("CycScalar: inverse failed (non-unit gcd)");
      for (auto& x : s1) x /= r1[0];
      s1.resize(cyclotomic_poly(m_).size() - 1);
      CycScalar z(m_, std::move(s1));
      z.reduce_mod_phi();
      z.trim_to_rational();
      return z;
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
}

CycScalar CycScalar::operator/(const CycScalar& o) const {
  return *this * o.inverse();
}

CycScalar CycScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycScalar acc(1), base = *this;
  unsigned long n = e;
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool CycScalar::operator==(const CycScalar& o) const {
  if (m_ == 1 && o.m_ == 1) return c_[0] == o.c_[0];
  unsigned m = std::lcm(m_, o.m_);
  CycScalar x = promoted(m), y = o.promoted(m);
  return x.c_ == y.c_;
}

std::string CycScalar::str() const {
  if (is_rational()) {
    mpq_class v = as_rational();
    return v.get_str();
  }
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    mpq_class coeff = c_[k];
    if (first) {
      if (coeff < 0) {
        os << "-";
        coeff = -coeff;
      }
    } else {
      os << (coeff < 0 ? " - " : " + ");
      if (coeff < 0) coeff = -coeff;
    }
    first = false;
    if (k == 0) {
      os << coeff.get_str();
    } else {
      if (coeff != 1) os << coeff.get_str() << "*";
      os << "zeta_" << m_;
      if (k > 1) os << "^" << k;
    }
  }
  if (first) os << "0";
  return os.str();
}

mpq_class rational_pow(const mpq_class& base, long e) {
  if (e == 0) return 1;
  if (base == 0) {
    if (e < 0) throw DomainError("0 to a negative power");
    return 0;
  }
  mpq_class b = base;
  bool inv = e < 0;
  unsigned long n = inv ? -(unsigned long)e : (unsigned long)e;
  mpq_class acc(1);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  if (inv) acc = mpq_class(1) / acc;
  return acc;
}

mpq_class parse_rational(const std::string& s) {
  if (s.empty()) throw DomainError("empty rational literal");
  for (char ch : s)
    if (!(isdigit((unsigned char)ch) || ch == '/' || ch == '-' || ch == '+'))
      throw DomainError("bad rational literal: " + s);
  try {
    mpq_class r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw DomainError("bad rational literal: " + s);
  }
}

}  // namespace u21

#include "u21/zeta.hpp"

#include "u21/padic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace u21 {

namespace {

using PVec = std::vector<ParamScalar>;

void trim(PVec& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

bool vec_is_zero(const PVec& p) {
  return std::all_of(p.begin(), p.end(),
                     [](const ParamScalar& c) { return c.is_zero(); });
}

PVec vec_mul(const PVec& a, const PVec& b) {
  if (vec_is_zero(a) || vec_is_zero(b)) return {};
  PVec r(a.size() + b.size() - 1, ParamScalar(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

PVec vec_add(const PVec& a, const PVec& b) {
  PVec r(std::max(a.size(), b.size()), ParamScalar(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

PVec vec_scale(const PVec& a, const ParamScalar& c) {
  PVec r = a;
  for (auto& x : r) x *= c;
  trim(r);
  return r;
}

// Remainder of a by b over the fraction field (b nonzero).
PVec vec_mod(PVec a, const PVec& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    ParamScalar c = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= b[i] * c;
    trim(a);
  }
  return a;
}

PVec vec_div_exact(PVec a, const PVec& b) {
  trim(a);
  PVec q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, ParamScalar(0));
  while (a.size() >= b.size() && !a.empty()) {
    ParamScalar c = a.back() / b.back();
    size_t off = a.size() - b.size();
    q[off] = c;
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= b[i] * c;
    trim(a);
  }
  if (!a.empty()) throw InternalError("polynomial division was not exact");
  trim(q);
  return q;
}

PVec vec_gcd(PVec a, PVec b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PVec r = vec_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    ParamScalar lead = a.back();
    for (auto& c : a) c = c / lead;
  }
  return a;
}

}  // namespace

ZetaRational ZetaRational::from_scalar(const ParamScalar& c) {
  return make({c}, {ParamScalar(1)}, 0);
}

ZetaRational ZetaRational::monomial(const ParamScalar& c, long k) {
  return make({c}, {ParamScalar(1)}, k);
}

ZetaRational ZetaRational::make(std::vector<ParamScalar> num,
                                std::vector<ParamScalar> den, long shift) {
  ZetaRational z;
  z.num_ = std::move(num);
  z.den_ = std::move(den);
  z.shift_ = shift;
  z.reduce();
  return z;
}

void ZetaRational::reduce() {
  trim(num_);
  trim(den_);
  if (den_.empty()) throw DomainError("zero denominator");
  if (num_.empty()) {
    num_ = {ParamScalar(0)};
    den_ = {ParamScalar(1)};
    shift_ = 0;
    return;
  }
  // Strip X-powers into the shift.
  size_t nz = 0;
  while (num_[nz].is_zero()) ++nz;
  size_t dz = 0;
  while (den_[dz].is_zero()) ++dz;
  if (nz) num_.erase(num_.begin(), num_.begin() + nz);
  if (dz) den_.erase(den_.begin(), den_.begin() + dz);
  shift_ += (long)nz - (long)dz;
  // Cancel the polynomial gcd.
  PVec g = vec_gcd(num_, den_);
  if (g.size() > 1) {
    num_ = vec_div_exact(num_, g);
    den_ = vec_div_exact(den_, g);
  }
  // den(0) = 1.
  ParamScalar c0 = den_[0];
  if (!(c0 == ParamScalar(1))) {
    ParamScalar inv = c0.inverse();
    num_ = vec_scale(num_, inv);
    den_ = vec_scale(den_, inv);
  }
}

bool ZetaRational::is_zero() const { return num_.size() == 1 && num_[0].is_zero(); }
bool ZetaRational::is_one() const {
  return shift_ == 0 && num_.size() == 1 && den_.size() == 1 &&
         num_[0] == ParamScalar(1);
}
bool ZetaRational::is_monomial() const {
  if (is_zero()) return false;
  return den_.size() == 1 && num_.size() == 1;
}
bool ZetaRational::is_laurent_polynomial() const { return den_.size() == 1; }

ZetaRational ZetaRational::operator-() const {
  ZetaRational r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

ZetaRational ZetaRational::operator+(const ZetaRational& o) const {
  // Align shifts: f = X^s n/d, g = X^t m/e with s <= t:
  // f + g = X^s (n e + X^{t-s} m d) / (d e).
  long s = std::min(shift_, o.shift_);
  PVec n1 = num_;
  n1.insert(n1.begin(), (size_t)(shift_ - s), ParamScalar(0));
  PVec n2 = o.num_;
  n2.insert(n2.begin(), (size_t)(o.shift_ - s), ParamScalar(0));
  return make(vec_add(vec_mul(n1, o.den_), vec_mul(n2, den_)),
              vec_mul(den_, o.den_), s);
}

ZetaRational ZetaRational::operator-(const ZetaRational& o) const {
  return *this + (-o);
}

ZetaRational ZetaRational::operator*(const ZetaRational& o) const {
  return make(vec_mul(num_, o.num_), vec_mul(den_, o.den_), shift_ + o.shift_);
}

ZetaRational ZetaRational::operator/(const ZetaRational& o) const {
  if (o.is_zero()) throw DomainError("division by zero rational function");
  return make(vec_mul(num_, o.den_), vec_mul(den_, o.num_), shift_ - o.shift_);
}

bool ZetaRational::operator==(const ZetaRational& o) const {
  return shift_ == o.shift_ && num_ == o.num_ && den_ == o.den_;
}

std::vector<ParamScalar> ZetaRational::series_expand(unsigned order) const {
  if (is_zero()) return PVec(order + 1, ParamScalar(0));
  if (shift_ < 0)
    throw DomainError("series expansion: pole at X = 0");
  // num/den with den(0) = 1: standard power-series division.
  PVec s(order + 1, ParamScalar(0));
  for (unsigned k = 0; k <= order; ++k) {
    ParamScalar acc = k < num_.size() ? num_[k] : ParamScalar(0);
    for (unsigned j = 1; j <= k && j < den_.size(); ++j)
      acc -= den_[j] * s[k - j];
    s[k] = acc;
  }
  PVec out(order + 1, ParamScalar(0));
  for (unsigned k = 0; k <= order; ++k)
    if ((long)k >= shift_) out[k] = s[k - (size_t)shift_];
  return out;
}

ZetaRational ZetaRational::substitute_s_to_one_minus_s(
    const ParamScalar& q) const {
  // X^k -> q^{-2k} X^{-k}; a polynomial of degree D becomes
  // X^{-D} * (reversed coefficients scaled by q^{-2k}).
  ParamScalar qm2 = q.pow(-2);
  auto transform = [&](const PVec& p) {
    PVec r(p.size(), ParamScalar(0));
    for (size_t k = 0; k < p.size(); ++k)
      r[p.size() - 1 - k] = p[k] * qm2.pow((long)k);
    return r;
  };
  PVec n = transform(num_);
  PVec d = transform(den_);
  long dn = (long)num_.size() - 1, dd = (long)den_.size() - 1;
  ZetaRational z = make(std::move(n), std::move(d), -shift_ - dn + dd);
  return z * from_scalar(qm2.pow(shift_));
}

ZetaRational ZetaRational::specialize(
    const std::map<Var, CycScalar>& values) const {
  PVec n, d;
  n.reserve(num_.size());
  d.reserve(den_.size());
  for (const auto& c : num_) n.push_back(c.specialize(values));
  for (const auto& c : den_) d.push_back(c.specialize(values));
  return make(std::move(n), std::move(d), shift_);
}

CycScalar ZetaRational::eval_at(const CycScalar& x) const {
  auto eval_vec = [&](const PVec& p) {
    CycScalar acc(0), xp(1);
    for (const auto& c : p) {
      if (!c.is_constant())
        throw DomainError("eval_at requires a fully specialized function");
      acc += c.constant_value() * xp;
      xp = xp * x;
    }
    return acc;
  };
  CycScalar n = eval_vec(num_), d = eval_vec(den_);
  if (d.is_zero()) throw DomainError("eval_at: pole");
  CycScalar v = n / d;
  if (shift_ != 0) v = v * x.pow(shift_);
  return v;
}

// ---------------------------------------------------------------------------

ZetaRational divide_exact(const ZetaRational& f, const ZetaRational& g) {
  if (g.is_zero()) throw DomainError("divide_exact: zero divisor");
  ZetaRational h = f / g;
  // Exactness: the quotient must again be a Laurent polynomial or a 1/P
  // form; a mixed num/den means g does not divide f in the ideal sense.
  bool num_trivial = h.num().size() == 1 && h.num()[0] == ParamScalar(1);
  if (!h.is_laurent_polynomial() && !num_trivial)
    throw DomainError("divide_exact: not exactly divisible");
  return h;
}

ZetaRational l_factor_unramified(const ParamScalar& c) {
  if (c.is_zero()) throw DomainError("l_factor: character value must be nonzero");
  return ZetaRational::make({ParamScalar(1)}, {ParamScalar(1), -c}, 0);
}

ZetaRational l_factor_ramified() { return ZetaRational::one(); }

ZetaRational l_factor_trivial() { return l_factor_unramified(ParamScalar(1)); }

std::vector<ParamScalar> whittaker_seq(const ParamScalar& nu,
                                       const ParamScalar& lambda,
                                       const ParamScalar& q, unsigned M) {
  std::vector<ParamScalar> c(M + 1, ParamScalar(0));
  ParamScalar alpha = (nu + q.pow(2) - q.pow(3)) * q.pow(-4);
  ParamScalar beta = (nu + q.pow(2) - lambda) * q.pow(-5);
  c[0] = ParamScalar(1);
  if (M >= 1) c[1] = (nu - q.pow(3)) * q.pow(-4);
  for (unsigned i = 2; i <= M; ++i) c[i] = alpha * c[i - 1] + beta * c[i - 2];
  return c;
}

ZetaRational zeta_series(const std::vector<ParamScalar>& c,
                         const ParamScalar& q) {
  std::vector<ParamScalar> coeffs(c.size(), ParamScalar(0));
  for (size_t i = 0; i < c.size(); ++i) coeffs[i] = c[i] * q.pow(2 * (long)i);
  return ZetaRational::make(std::move(coeffs), {ParamScalar(1)}, 0);
}

ZetaRational zeta_closed(const ParamScalar& nu, const ParamScalar& lambda,
                         const ParamScalar& q) {
  ParamScalar A = (nu + q.pow(2) - q.pow(3)) * q.pow(-2);
  ParamScalar B = (nu + q.pow(2) - lambda) * q.pow(-1);
  return ZetaRational::make({ParamScalar(1), ParamScalar(-1)},
                            {ParamScalar(1), -A, -B}, 0);
}

ZetaRational zeta_factored(const ParamScalar& nu, const ParamScalar& a,
                           const ParamScalar& q) {
  if (a.is_zero()) throw DomainError("zeta_factored: a must be nonzero");
  ParamScalar A = (nu + q.pow(2) - q.pow(3) - q.pow(2) * a) * q.pow(-2);
  return l_factor_unramified(a) *
         ZetaRational::make({ParamScalar(1)}, {ParamScalar(1), -A}, 0);
}

ParamScalar lambda_from_nu(const ParamScalar& nu, const ParamScalar& a,
                           const ParamScalar& q) {
  return (nu + q.pow(2) - q.pow(2) * a) * (ParamScalar(1) + q.pow(-1) * a);
}

ParamScalar alpha_from_ratio(const ParamScalar& a, const ParamScalar& q,
                             const ParamScalar& r) {
  ParamScalar denom = q.pow(2) * a.inverse() + q;
  if (denom.is_zero())
    throw DomainError("alpha_from_ratio: reducibility locus q^2/a + q = 0");
  return a.inverse() + a.inverse() * (q.pow(2) - ParamScalar(1)) *
                           denom.inverse() * r;
}

bool divides(const ZetaRational& f, const ZetaRational& g) {
  auto check_form = [](const ZetaRational& z) {
    if (z.shift() != 0 || z.num().size() != 1 ||
        !(z.num()[0] == ParamScalar(1)))
      throw DomainError("divides: operands must have the form 1/P, P(0) = 1");
  };
  check_form(f);
  check_form(g);
  // 1/P divides 1/Q iff P divides Q, i.e. f/g = Q/P is a Laurent polynomial.
  return (f / g).is_laurent_polynomial();
}

ZetaRational epsilon_factor(long N, const ParamScalar& q) {
  if (N < 0) throw DomainError("epsilon_factor: conductor must be >= 0");
  return ZetaRational::monomial(q.pow(N), N);
}

bool monomial_check(bool candidate_inverse_le, long N, const ParamScalar& q) {
  ZetaRational eps = epsilon_factor(N, q);
  if (candidate_inverse_le) {
    ZetaRational le = l_factor_trivial();
    eps = eps * le / le.substitute_s_to_one_minus_s(q);
  }
  return eps.is_monomial();
}

// ---------------------------------------------------------------------------
// canonical rendering and parsing

namespace {

bool is_single_paren_group(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && i + 1 < s.size()) return false;
  }
  return depth == 0;
}

std::string coeff_str(const ParamScalar& c) {
  bool atomic = c.is_constant() && c.constant_value().is_rational();
  std::string s = c.str();
  if (atomic) return s;
  if (is_single_paren_group(s)) return s;
  return "(" + s + ")";
}

std::string laurent_str(const std::vector<ParamScalar>& p, long shift) {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k].is_zero()) continue;
    long e = (long)k + shift;
    std::string cs = coeff_str(p[k]);
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) {
        os << "-";
        cs = cs.substr(1);
      }
    } else {
      os << (neg ? " - " : " + ");
      if (neg) cs = cs.substr(1);
    }
    first = false;
    if (e == 0) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      os << "X";
      if (e != 1) os << "^" << e;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

std::string render(const ZetaRational& z) {
  if (z.is_laurent_polynomial()) return laurent_str(z.num(), z.shift());
  std::string num = laurent_str(z.num(), z.shift());
  size_t num_terms = 0;
  for (const auto& c : z.num())
    if (!c.is_zero()) ++num_terms;
  if (num_terms > 1 || num.find(' ') != std::string::npos)
    num = "(" + num + ")";
  return num + " / (" + laurent_str(z.den(), 0) + ")";
}

namespace {

// Tiny recursive-descent parser for the rendered grammar:
//   zeta   := expr [ '/' expr ]
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' int]
//   atom   := rational | name | '(' zeta ')'
//   name   := X | nu | lambda | a | q | zeta_<m>
struct Parser {
  std::string s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && isspace((unsigned char)s[i])) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }

  long parse_int() {
    skip();
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && isdigit((unsigned char)s[i])) ++i;
    if (start == i) throw DomainError("parse: expected integer");
    return std::stol(s.substr(start, i - start));
  }

  ZetaRational parse_atom() {
    skip();
    if (eat('(')) {
      ZetaRational z = parse_quotient();
      if (!eat(')')) throw DomainError("parse: missing ')'");
      return z;
    }
    if (i < s.size() && (isdigit((unsigned char)s[i]))) {
      size_t start = i;
      while (i < s.size() && isdigit((unsigned char)s[i])) ++i;
      std::string numpart = s.substr(start, i - start);
      if (i < s.size() && s[i] == '/') {
        // rational n/d only when followed by digits (vs. quotient of exprs)
        size_t save = i;
        ++i;
        size_t dstart = i;
        while (i < s.size() && isdigit((unsigned char)s[i])) ++i;
        if (dstart != i &&
            (i >= s.size() || (!isalpha((unsigned char)s[i]) && s[i] != '('))) {
          return ZetaRational::from_scalar(ParamScalar(
              CycScalar(parse_rational(numpart + "/" + s.substr(dstart, i - dstart)))));
        }
        i = save;
      }
      return ZetaRational::from_scalar(
          ParamScalar(CycScalar(parse_rational(numpart))));
    }
    // name
    size_t start = i;
    while (i < s.size() && (isalnum((unsigned char)s[i]) || s[i] == '_')) ++i;
    std::string name = s.substr(start, i - start);
    if (name == "X") return ZetaRational::monomial(ParamScalar(1), 1);
    if (name == "nu") return ZetaRational::from_scalar(ps_nu());
    if (name == "lambda") return ZetaRational::from_scalar(ps_lambda());
    if (name == "a") return ZetaRational::from_scalar(ps_a());
    if (name == "q") return ZetaRational::from_scalar(ps_q());
    if (name.rfind("zeta_", 0) == 0) {
      unsigned m = (unsigned)std::stoul(name.substr(5));
      return ZetaRational::from_scalar(
          ParamScalar(CycScalar::root_of_unity(m, 1)));
    }
    throw DomainError("parse: unknown symbol '" + name + "'");
  }

  ZetaRational parse_factor() {
    ZetaRational base = parse_atom();
    if (eat('^')) {
      long e = parse_int();
      ZetaRational acc = ZetaRational::one();
      long n = e < 0 ? -e : e;
      for (long k = 0; k < n; ++k) acc = acc * base;
      if (e < 0) acc = ZetaRational::one() / acc;
      return acc;
    }
    return base;
  }

  ZetaRational parse_term() {
    ZetaRational acc = parse_factor();
    while (peek() == '*') {
      eat('*');
      acc = acc * parse_factor();
    }
    return acc;
  }

  ZetaRational parse_expr() {
    bool neg = false;
    if (peek() == '-') {
      eat('-');
      neg = true;
    } else if (peek() == '+') {
      eat('+');
    }
    ZetaRational acc = parse_term();
    if (neg) acc = -acc;
    while (true) {
      char c = peek();
      if (c == '+') {
        eat('+');
        acc = acc + parse_term();
      } else if (c == '-') {
        eat('-');
        acc = acc - parse_term();
      } else {
        break;
      }
    }
    return acc;
  }

  ZetaRational parse_quotient() {
    ZetaRational n = parse_expr();
    if (peek() == '/') {
      eat('/');
      ZetaRational d = parse_expr();
      return n / d;
    }
    return n;
  }
};

}  // namespace

ZetaRational parse_zeta(const std::string& text) {
  Parser p{text};
  ZetaRational z = p.parse_quotient();
  p.skip();
  if (p.i != p.s.size())
    throw DomainError("parse: trailing junk at position " +
                      std::to_string(p.i));
  return z;
}

}  // namespace u21

#include "u21/poly.hpp"

#include <algorithm>
#include <sstream>

namespace u21 {

bool Mono::operator<(const Mono& o) const {
  long d = total_degree(), od = o.total_degree();
  if (d != od) return d < od;
  return e < o.e;  // graded lex
}

bool Mono::divides(const Mono& o) const {
  for (int i = 0; i < 4; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Mono Mono::operator*(const Mono& o) const {
  Mono r;
  for (int i = 0; i < 4; ++i) r.e[i] = e[i] + o.e[i];
  return r;
}

Mono Mono::operator/(const Mono& o) const {
  Mono r;
  for (int i = 0; i < 4; ++i) {
    r.e[i] = e[i] - o.e[i];
    if (r.e[i] < 0) throw DomainError("monomial division is not exact");
  }
  return r;
}

Poly::Poly(const CycScalar& c) {
  if (!c.is_zero()) terms_.emplace(Mono{}, c);
}

Poly Poly::variable(Var v) {
  Poly p;
  Mono m;
  m.e[(int)v] = 1;
  p.terms_.emplace(m, CycScalar(1));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{});
}

CycScalar Poly::constant_value() const {
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_.empty() ? CycScalar(0) : terms_.begin()->second;
}

void Poly::add_term(const Mono& m, const CycScalar& c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

std::optional<Poly> Poly::exact_divide(const Poly& d) const {
  if (d.is_zero()) throw DomainError("division by the zero polynomial");
  Poly rem = *this, quo;
  auto [dm, dc] = d.leading();
  while (!rem.is_zero()) {
    auto [rm, rc] = rem.leading();
    if (!dm.divides(rm)) return std::nullopt;
    Mono qm = rm / dm;
    CycScalar qc = rc / dc;
    Poly t;
    t.terms_.emplace(qm, qc);
    quo = quo + t;
    rem = rem - t * d;
  }
  return quo;
}

Mono Poly::monomial_content() const {
  if (terms_.empty()) return Mono{};
  Mono r = terms_.begin()->first;
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < 4; ++i) r.e[i] = std::min(r.e[i], m.e[i]);
  return r;
}

Poly Poly::shift_down(const Mono& m) const {
  Poly r;
  for (const auto& [mm, c] : terms_) r.terms_.emplace(mm / m, c);
  return r;
}

std::pair<Mono, CycScalar> Poly::leading() const {
  if (terms_.empty()) throw DomainError("leading term of zero");
  return *terms_.rbegin();
}

Poly Poly::substitute(const std::map<Var, CycScalar>& values) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    CycScalar coeff = c;
    Mono rest;
    for (int i = 0; i < 4; ++i) {
      auto it = values.find((Var)i);
      if (it != values.end())
        coeff *= it->second.pow(m.e[i]);
      else
        rest.e[i] = m.e[i];
    }
    r.add_term(rest, coeff);
  }
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    bool negative = !cs.empty() && cs[0] == '-' && c.is_rational();
    if (first) {
      if (negative) {
        os << "-";
        cs = cs.substr(1);
      }
    } else {
      os << (negative ? " - " : " + ");
      if (negative) cs = cs.substr(1);
    }
    first = false;
    bool has_vars = !(m == Mono{});
    bool coeff_shown = !has_vars || cs != "1";
    if (coeff_shown) {
      if (c.is_rational())
        os << cs;
      else
        os << "(" << cs << ")";
    }
    bool star = coeff_shown && has_vars;
    for (int i = 0; i < 4; ++i) {
      if (m.e[i] == 0) continue;
      if (star) os << "*";
      os << var_name((Var)i);
      if (m.e[i] > 1) os << "^" << m.e[i];
      star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

ParamScalar::ParamScalar(Poly num, Poly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("ParamScalar: zero denominator");
  normalize();
}

void ParamScalar::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(CycScalar(1));
    return;
  }
  // Strip common monomial content.
  Mono mc;
  {
    Mono mn = num_.monomial_content(), md = den_.monomial_content();
    for (int i = 0; i < 4; ++i) mc.e[i] = std::min(mn.e[i], md.e[i]);
  }
  if (!(mc == Mono{})) {
    num_ = num_.shift_down(mc);
    den_ = den_.shift_down(mc);
  }
  // After the content strip a single-term denominator either is constant or
  // cannot divide the numerator; skip the polynomial division attempts in
  // that (dominant: q-power denominators) case.
  bool den_mono = den_.terms().size() == 1;
  if (!den_mono || num_.terms().size() == 1) {
    if (auto q = num_.exact_divide(den_)) {
      num_ = *q;
      den_ = Poly(CycScalar(1));
    } else if (auto q2 = den_.exact_divide(num_)) {
      den_ = *q2;
      num_ = Poly(CycScalar(1));
    }
  }
  // Scale so the denominator's leading coefficient is 1.
  CycScalar lead = den_.leading().second;
  if (!lead.is_one()) {
    CycScalar inv = lead.inverse();
    num_ = num_ * Poly(inv);
    den_ = den_ * Poly(inv);
  }
}

CycScalar ParamScalar::constant_value() const {
  if (!is_constant()) throw DomainError("ParamScalar is not constant");
  return num_.constant_value() / den_.constant_value();
}

ParamScalar ParamScalar::operator-() const {
  ParamScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

ParamScalar ParamScalar::operator+(const ParamScalar& o) const {
  return ParamScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

ParamScalar ParamScalar::operator-(const ParamScalar& o) const {
  return *this + (-o);
}

ParamScalar ParamScalar::operator*(const ParamScalar& o) const {
  return ParamScalar(num_ * o.num_, den_ * o.den_);
}

ParamScalar ParamScalar::operator/(const ParamScalar& o) const {
  return *this * o.inverse();
}

ParamScalar ParamScalar::inverse() const {
  if (num_.is_zero()) throw DomainError("ParamScalar: division by zero");
  return ParamScalar(den_, num_);
}

ParamScalar ParamScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  ParamScalar acc(1), base = *this;
  unsigned long n = e;
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool ParamScalar::operator==(const ParamScalar& o) const {
  return num_ * o.den_ == o.num_ * den_;
}

ParamScalar ParamScalar::specialize(
    const std::map<Var, CycScalar>& values) const {
  Poly n = num_.substitute(values);
  Poly d = den_.substitute(values);
  if (d.is_zero()) throw DomainError("specialization hits a pole");
  return ParamScalar(std::move(n), std::move(d));
}

std::string ParamScalar::str() const {
  if (den_ == Poly(CycScalar(1))) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

ParamScalar ps_nu() { return ParamScalar::variable(Var::nu); }
ParamScalar ps_lambda() { return ParamScalar::variable(Var::lambda); }
ParamScalar ps_a() { return ParamScalar::variable(Var::a); }
ParamScalar ps_q() { return ParamScalar::variable(Var::q); }

}  // namespace u21

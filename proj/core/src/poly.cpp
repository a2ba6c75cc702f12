#include "sqlab/poly.hpp"

#include <algorithm>
#include <sstream>

#include "sqlab/errors.hpp"

namespace sqlab {

namespace {
const Rat kZero(0);
}

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Rat& Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[static_cast<std::size_t>(k)];
}

const Rat& Poly::leading() const {
  if (c_.empty()) return kZero;
  return c_.back();
}

Rat Poly::eval(const Rat& t) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

int Poly::sign_at_pos_inf() const { return leading().sign(); }

int Poly::sign_at_neg_inf() const {
  const int s = leading().sign();
  return degree() % 2 == 0 ? s : -s;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) {
    d[k - 1] = c_[k] * Rat(static_cast<long long>(k));
  }
  return Poly(std::move(d));
}

Poly Poly::shifted(const Rat& c) const {
  // In-place Taylor shift by repeated synthetic division.
  if (c.is_zero() || is_zero()) return *this;
  std::vector<Rat> out = c_;
  const std::size_t n = out.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j >= i + 1; --j) {
      out[j - 1] += c * out[j];
    }
  }
  return Poly(std::move(out));
}

Poly Poly::scaled_arg(const Rat& c) const {
  std::vector<Rat> out(c_.size());
  Rat pw(1);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    out[k] = c_[k] * pw;
    pw *= c;
  }
  return Poly(std::move(out));
}

Poly Poly::operator-() const {
  std::vector<Rat> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = -c_[i];
  return Poly(std::move(out));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return Poly(std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  return Poly(std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      out[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Poly(std::move(out));
}

Poly Poly::operator*(const Rat& s) const {
  std::vector<Rat> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * s;
  return Poly(std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw DivisionByZeroError("polynomial division by zero");
  std::vector<Rat> rem = c_;
  const int dd = divisor.degree();
  const Rat& lead = divisor.leading();
  if (degree() < dd) return {Poly(), *this};
  std::vector<Rat> quot(static_cast<std::size_t>(degree() - dd) + 1, Rat(0));
  for (int k = degree(); k >= dd; --k) {
    Rat q = rem[static_cast<std::size_t>(k)] / lead;
    if (q.is_zero()) continue;
    quot[static_cast<std::size_t>(k - dd)] = q;
    for (int i = 0; i <= dd; ++i) {
      rem[static_cast<std::size_t>(k - dd + i)] -= q * divisor.coeff(i);
    }
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly Poly::gcd(Poly a, Poly b) {
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().recip();
}

Poly Poly::primitive_positive() const {
  if (is_zero()) return *this;
  // Scale so coefficients are coprime integers with positive leading one.
  mpz_class den_lcm(1);
  for (const Rat& c : c_) {
    mpz_class d = c.den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    den_lcm = den_lcm / g * d;
  }
  std::vector<mpz_class> ints;
  ints.reserve(c_.size());
  mpz_class content(0);
  for (const Rat& c : c_) {
    mpz_class v = c.num() * (den_lcm / c.den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  std::vector<Rat> out;
  out.reserve(ints.size());
  const int flip = ints.back() < 0 ? -1 : 1;
  for (const mpz_class& v : ints) out.emplace_back(v * flip / content, mpz_class(1));
  return Poly(std::move(out));
}

Poly Poly::squarefree_part() const {
  if (is_zero()) return *this;
  if (degree() <= 1) return monic();
  Poly g = gcd(*this, derivative());
  if (g.degree() <= 0) return monic();
  return divmod(g).first.monic();
}

Poly Poly::odd_multiplicity_part() const {
  // Yun's squarefree decomposition; multiply the odd-index factors.
  if (is_zero()) return *this;
  if (degree() <= 0) return Poly::constant(1);
  Poly p = monic();
  Poly g = gcd(p, p.derivative());
  if (g.degree() <= 0) return p;  // already squarefree: every root is odd
  Poly b = p.divmod(g).first;
  Poly d = p.derivative().divmod(g).first - b.derivative();
  Poly odd = Poly::constant(1);
  for (int i = 1; !b.is_zero() && b.degree() > 0; ++i) {
    Poly a = gcd(b, d);
    if (i % 2 == 1 && a.degree() > 0) odd = odd * a;
    b = b.divmod(a).first;
    Poly c = d.divmod(a).first;
    d = c - b.derivative();
  }
  return odd.monic();
}

Rat Poly::root_bound() const {
  if (degree() <= 0) return Rat(1);
  Rat m(0);
  for (int i = 0; i < degree(); ++i) {
    Rat a = (coeff(i) / leading()).abs();
    if (m < a) m = a;
  }
  return m + Rat(1);
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rat& c = coeff(k);
    if (c.is_zero()) continue;
    if (!first) os << (c.sign() > 0 ? " + " : " - ");
    else if (c.sign() < 0) os << "-";
    first = false;
    Rat a = c.abs();
    if (k == 0 || !(a == Rat(1))) os << a.str();
    if (k > 0) {
      if (!(a == Rat(1))) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

RatFunc RatFunc::reduced() const {
  if (num.is_zero()) return {Poly(), Poly::constant(1)};
  Poly g = Poly::gcd(num, den);
  Poly n = num.divmod(g).first;
  Poly d = den.divmod(g).first;
  // normalize: monic denominator
  Rat lead = d.leading();
  return {n * lead.recip(), d * lead.recip()};
}

RatFunc RatFunc::derivative() const {
  RatFunc r{num.derivative() * den - num * den.derivative(), den * den};
  return r.reduced();
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc{a.num * b.den + b.num * a.den, a.den * b.den}.reduced();
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc{a.num * b.den - b.num * a.den, a.den * b.den}.reduced();
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc{a.num * b.num, a.den * b.den}.reduced();
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.num.is_zero()) throw DivisionByZeroError("rational function division by zero");
  return RatFunc{a.num * b.den, a.den * b.num}.reduced();
}

Rat RatFunc::eval(const Rat& t) const {
  Rat d = den.eval(t);
  if (d.is_zero()) throw DivisionByZeroError("rational function pole");
  return num.eval(t) / d;
}

}  // namespace sqlab

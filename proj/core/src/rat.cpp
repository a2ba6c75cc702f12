#include "sqlab/rat.hpp"

#include <cctype>
#include <climits>
#include <ostream>

#include "sqlab/errors.hpp"

namespace sqlab {

namespace {

mpz_class mpz_of_ll(long long v) {
  // mpz_class has no long long constructor on LP64-agnostic paths; go via
  // string only when the value does not fit a long.
  if (v >= LONG_MIN && v <= LONG_MAX) return mpz_class(static_cast<long>(v));
  return mpz_class(std::to_string(v));
}

}  // namespace

Rat::Rat(long long n) : q_(mpz_of_ll(n)) {}

Rat::Rat(long long num, long long den) : Rat(mpz_of_ll(num), mpz_of_ll(den)) {}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZeroError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat::Rat(const mpq_class& q) : q_(q) {
  if (q_.get_den() == 0) {
    throw DivisionByZeroError("rational with zero denominator");
  }
  q_.canonicalize();
}

std::optional<Rat> Rat::try_parse(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
  std::size_t num_begin = i;
  while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_begin) return std::nullopt;
  std::string num(text.substr(0, i));
  std::string den = "1";
  if (i < n && text[i] == '/') {
    ++i;
    std::size_t den_begin = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_begin) return std::nullopt;
    den.assign(text.substr(den_begin, i - den_begin));
  }
  if (i != n) return std::nullopt;
  mpz_class d(den);
  if (d == 0) return std::nullopt;  // "x/0" is not a rational literal
  return Rat(mpz_class(num), d);
}

Rat Rat::parse(std::string_view text) {
  auto r = try_parse(text);
  if (!r) throw ParseError("bad rational literal '" + std::string(text) + "'", 0);
  return *r;
}

Rat Rat::abs() const {
  Rat r;
  r.q_ = ::abs(q_);
  return r;
}

Rat Rat::recip() const {
  if (is_zero()) throw DivisionByZeroError("reciprocal of zero");
  Rat r;
  r.q_ = 1 / q_;
  return r;
}

Rat Rat::operator-() const {
  Rat r;
  r.q_ = -q_;
  return r;
}

Rat& Rat::operator+=(const Rat& o) {
  q_ += o.q_;
  return *this;
}

Rat& Rat::operator-=(const Rat& o) {
  q_ -= o.q_;
  return *this;
}

Rat& Rat::operator*=(const Rat& o) {
  q_ *= o.q_;
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw DivisionByZeroError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rat::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::size_t Rat::hash() const {
  std::size_t h = 14695981039346656037ull;
  auto mix = [&h](std::size_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  const mpq_srcptr q = q_.get_mpq_t();
  mix(static_cast<std::size_t>(mpz_sgn(mpq_numref(q))) + 7u);
  for (mpz_srcptr z : {mpq_numref(q), mpq_denref(q)}) {
    const mp_size_t limbs = mpz_size(z);
    mix(static_cast<std::size_t>(limbs));
    for (mp_size_t i = 0; i < limbs; ++i) {
      mix(static_cast<std::size_t>(mpz_getlimbn(z, i)));
    }
  }
  return h;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace sqlab

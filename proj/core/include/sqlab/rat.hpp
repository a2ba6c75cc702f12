#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace sqlab {

/// Exact arbitrary-precision rational. Values are always canonical:
/// denominator > 0 and gcd(|numerator|, denominator) == 1, so structural
/// equality is value equality. Arithmetic never rounds.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(int n) : q_(n) {}                 // NOLINT: implicit by design
  Rat(long n) : q_(static_cast<long int>(n)) {}  // NOLINT
  Rat(long long n);                     // NOLINT
  Rat(long long num, long long den);
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(const mpq_class& q);

  /// Parses "[+-]digits[/digits]" with a positive denominator.
  static std::optional<Rat> try_parse(std::string_view text);
  /// Same as try_parse but throws ParseError.
  static Rat parse(std::string_view text);

  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rat abs() const;
  /// Multiplicative inverse; throws DivisionByZeroError on zero.
  Rat recip() const;

  Rat operator-() const;
  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);  // throws DivisionByZeroError

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Canonical text form, "p" or "p/q".
  std::string str() const;
  /// Lossy conversion for reports and fitting only; never feeds set
  /// arithmetic.
  double to_double() const { return q_.get_d(); }

  std::size_t hash() const;

 private:
  mpq_class q_;  // invariant: canonical
};

struct RatHash {
  std::size_t operator()(const Rat& r) const { return r.hash(); }
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace sqlab

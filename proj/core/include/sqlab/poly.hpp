#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "sqlab/interval.hpp"
#include "sqlab/rat.hpp"

namespace sqlab {

/// Univariate polynomial with exact rational coefficients, stored lowest
/// degree first. The leading coefficient is nonzero unless the polynomial
/// is identically zero (empty coefficient vector).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);
  Poly(std::initializer_list<Rat> coeffs)
      : Poly(std::vector<Rat>(coeffs)) {}

  static Poly constant(Rat c) { return Poly({std::move(c)}); }
  static Poly variable() { return Poly({Rat(0), Rat(1)}); }
  /// (t - r)
  static Poly linear_root(const Rat& r) { return Poly({-r, Rat(1)}); }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& coeff(int k) const;
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& leading() const;

  Rat eval(const Rat& t) const;
  int sign_at(const Rat& t) const { return eval(t).sign(); }
  /// Sign of p(t) as t -> +inf (+1/-1; 0 only for the zero polynomial).
  int sign_at_pos_inf() const;
  int sign_at_neg_inf() const;

  Poly derivative() const;
  /// p(t + c) expanded exactly.
  Poly shifted(const Rat& c) const;
  /// p(c * t)
  Poly scaled_arg(const Rat& c) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator*(const Rat& s) const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Exact euclidean division: returns (quotient, remainder) with
  /// deg(remainder) < deg(divisor). Divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;

  /// Monic gcd of a and b (constant 1 when coprime; zero iff both zero).
  static Poly gcd(Poly a, Poly b);

  /// Monic multiple of this polynomial (normalizes the leading coefficient).
  Poly monic() const;
  /// Integer-content-free form with positive leading coefficient; equal for
  /// any two polynomials that differ by a positive rational factor.
  Poly primitive_positive() const;

  /// Largest squarefree divisor (product of distinct irreducible factors).
  Poly squarefree_part() const;
  /// Product of the irreducible factors of odd multiplicity: the part whose
  /// real roots are exactly the sign changes of the polynomial.
  Poly odd_multiplicity_part() const;

  /// Cauchy bound: every real root lies in [-B, B].
  Rat root_bound() const;

  std::string str(const std::string& var = "t") const;

 private:
  std::vector<Rat> c_;
};

/// Quotient of two polynomials. Used for derivatives of parametric curves;
/// kept reduced on request, never evaluated where the denominator vanishes.
struct RatFunc {
  Poly num;
  Poly den = Poly::constant(1);

  static RatFunc of(Poly p) { return {std::move(p), Poly::constant(1)}; }

  bool is_zero() const { return num.is_zero(); }
  RatFunc reduced() const;
  RatFunc derivative() const;  // quotient rule, reduced

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);

  /// Exact value; throws DivisionByZeroError at a pole.
  Rat eval(const Rat& t) const;
};

/// Number of distinct real roots of p in the half-open domain (lo, hi],
/// computed with Sturm sequences over exact rationals.
/// Throws PreconditionError("zero-polynomial") when p is identically zero.
long long count_roots(const Poly& p, const Domain& dom);

/// One isolated real root: the root lies in (lo, hi]. When `exact` is set
/// the root is rational and equals hi.
struct IsolatedRoot {
  Rat lo, hi;
  bool exact = false;
};

/// All distinct real roots of p in the domain, as strictly separated
/// isolating intervals in increasing order (hi of one interval is strictly
/// below lo of the next, so a sample point always exists between roots).
std::vector<IsolatedRoot> isolate_roots(const Poly& p, const Domain& dom);

struct SignChangeResult {
  long long count = 0;                    // sign changes in the domain
  std::vector<IsolatedRoot> locations;    // one isolating interval per change
};

/// Points in the domain where p changes sign (roots of odd multiplicity),
/// with separated rational isolating intervals. Roots of even multiplicity
/// are not sign changes. Throws PreconditionError("zero-polynomial") when p
/// is identically zero.
SignChangeResult count_sign_changes(const Poly& p, const Domain& dom);

}  // namespace sqlab

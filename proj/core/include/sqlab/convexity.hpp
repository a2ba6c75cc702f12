#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sqlab/interval.hpp"
#include "sqlab/poly.hpp"
#include "sqlab/rat.hpp"
#include "sqlab/rset.hpp"

namespace sqlab {

/// A map usable as the convex ingredient of the growth constructions.
///
/// The log-shift kind stands for the strictly convex, strictly increasing
/// function t -> log(e^t + 1); it is never evaluated transcendentally.
/// Its exact rational action on a set element is x -> z*x + 1, and its
/// convexity analysis goes through the closed-form derivative quotient of
/// the parametric curve, so every produced quantity stays rational.
class ConvexMap {
 public:
  enum class Kind { Pow, CubeShift, GeneralPoly, LogShift };

  /// t^k on (0, inf); k >= 2.
  static ConvexMap pow(int k);
  /// (t + h)^3 on (-h, inf).
  static ConvexMap cube_shift(const Rat& h);
  static ConvexMap general_poly(Poly p, Domain dom);
  /// Multiplicative action x -> z*x + 1 with z > 0.
  static ConvexMap log_shift(const Rat& z);

  /// Accepts "pow:k", "cube-shift:h", "poly:[c0,c1,...]@(lo,hi)",
  /// "logshift:z"; domain endpoints may be "inf" / "-inf".
  static ConvexMap parse(std::string_view spec);
  std::string str() const;

  Kind kind() const { return kind_; }
  bool is_log_shift() const { return kind_ == Kind::LogShift; }
  /// Polynomial form; invalid for the log-shift kind.
  const Poly& as_poly() const;
  /// z for log-shift, h for cube-shift.
  const Rat& scalar() const { return scalar_; }
  const Domain& declared_domain() const { return domain_; }

  /// Exact elementwise action.
  Rat apply(const Rat& x) const;

  friend bool operator==(const ConvexMap& a, const ConvexMap& b);

 private:
  ConvexMap() = default;
  Kind kind_ = Kind::Pow;
  Poly poly_;
  Rat scalar_;
  Domain domain_;
};

enum class Curvature { Convex, Concave };

struct ConvexityCertificate {
  Curvature direction = Curvature::Convex;
  Domain domain;
  bool closed_form = false;  // log-shift case
};

struct ConvexityRejection {
  std::string reason;
  /// A rational point in the domain where f' <= 0 or f'' <= 0, when one
  /// exists (an even-order irrational zero has none).
  std::optional<Rat> witness;
  /// Isolating interval of the offending derivative root.
  std::optional<IsolatedRoot> where;
};

using CertifyResult = std::variant<ConvexityCertificate, ConvexityRejection>;

/// Accepts iff f' > 0 and f'' > 0 (or f'' < 0 throughout, giving a concave
/// certificate) on the whole domain, proven by exact root counting.
CertifyResult certify_convex(const ConvexMap& f, const Domain& dom);

/// True iff certify_convex yields a convex (not concave) certificate.
bool certified_convex_increasing(const ConvexMap& f, const Domain& dom);

/// Shift parameters for a pair of maps. Additive: the four h values of the
/// curve (f1(t+h1')-f1(t+h1), f2(t+h2')-f2(t+h2)). Multiplicative: the four
/// z values of the log-shift curve, acting as x -> z*x + 1.
struct ShiftQuadruple {
  Rat h1, h1p, h2, h2p;
  GroupLaw law = GroupLaw::Additive;
};

struct PartitionPiece {
  Domain interval;
  Curvature flag = Curvature::Convex;
};

/// Minimal splitting of the domain at the sign changes of d2y/dx2 of the
/// shift-difference curve; on each piece (away from the isolating slivers
/// of its right boundary) the curve is strictly convex or strictly concave.
struct ConvexityPartition {
  std::vector<PartitionPiece> pieces;
  /// d2y/dx2 as a reduced quotient of polynomials in the curve parameter.
  RatFunc curvature;
  /// Isolating intervals of the sign changes (one per internal boundary).
  std::vector<IsolatedRoot> boundaries;
  Domain domain;

  int piece_count() const { return static_cast<int>(pieces.size()); }
  /// Index of the piece whose half-open interval contains t.
  std::size_t piece_index(const Rat& t) const;
};

/// Computes the convexity partition for the curve defined by (f1, f2) and
/// the shift quadruple. Throws PreconditionError with check
/// "degenerate-curve" when d2y/dx2 vanishes identically, "non-graph" when
/// dx/dt has a zero in the domain, "shift-order" when the quadruple is not
/// ordered positive.
ConvexityPartition convexity_partition(const ConvexMap& f1, const ConvexMap& f2,
                                       const ShiftQuadruple& h,
                                       const Domain& dom = Domain::greater_than(Rat(0)));

}  // namespace sqlab

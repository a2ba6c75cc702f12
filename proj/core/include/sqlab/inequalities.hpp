#pragma once

#include <string>
#include <vector>

#include "sqlab/rat.hpp"
#include "sqlab/rset.hpp"

namespace sqlab {

/// One exact instance of a sumset inequality. `holds` is lhs <= rhs decided
/// in exact rational arithmetic; the checked statements are theorems, so a
/// false value signals a set-arithmetic bug.
struct IneqInstance {
  std::string name;
  std::string operands_hash;
  long long lhs = 0;
  Rat rhs;
  bool holds = false;
  std::string detail;
};

/// Stable content hash of the operand sets (FNV-1a over canonical text).
std::string operands_hash(const std::vector<const RSet*>& sets);

/// |kX - lX| <= |X+X|^(k+l) / |X|^(k+l-1); multiplicative law checks
/// |X^(k)/X^(l)| <= |XX|^(k+l) / |X|^(k+l-1). Needs k, l >= 0, k+l >= 1;
/// the multiplicative law excludes 0 from X.
IneqInstance check_plunnecke(const RSet& x, int k, int l, GroupLaw law = GroupLaw::Additive,
                             const EvalOptions& opt = {});

enum class RuzsaVariant { Difference, SumForm };

/// |Y-Z| <= |X-Y||X-Z|/|X| (Difference) or |Y-Z| <= |X+Y||X+Z|/|X|
/// (SumForm). X must be nonempty.
IneqInstance check_ruzsa_triangle(const RSet& x, const RSet& y, const RSet& z, RuzsaVariant v,
                                  GroupLaw law = GroupLaw::Additive, const EvalOptions& opt = {});

/// |X_1 + ... + X_k| <= |X_1+Y| ... |X_k+Y| / |Y|^(k-1). Y nonempty.
IneqInstance check_garaev_sum(const std::vector<RSet>& xs, const RSet& y,
                              GroupLaw law = GroupLaw::Additive, const EvalOptions& opt = {});

/// |A(A+lambda)| together with its ratio to |A|^(5/4); nothing is asserted,
/// the implied constant of the lower bound is unknown.
struct ShiftProductProbe {
  Rat lambda;
  long long size = 0;
  double ratio_to_5_4 = 0.0;
};
ShiftProductProbe shift_product_probe(const RSet& a, const Rat& lambda,
                                      const EvalOptions& opt = {});

/// Scans all pairs (a, a') of nonzero elements minimizing the multiplicative
/// energy of (aA+1, a'A+1); the Cauchy-Schwarz consequence
/// |X|^2|Y|^2 / E*(X,Y) is a certified lower bound for |XY| and is verified
/// against the exact product-set size.
struct EnergyPairResult {
  Rat a, a_prime;
  long long energy = 0;
  Rat lower_bound;          // |X|^2 |Y|^2 / energy
  long long product_size = 0;
  bool bound_holds = false;  // lower_bound <= product_size (always true)
};
EnergyPairResult best_energy_pair(const RSet& a, const EvalOptions& opt = {});

}  // namespace sqlab

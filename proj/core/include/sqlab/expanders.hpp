#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqlab/convexity.hpp"
#include "sqlab/interval.hpp"
#include "sqlab/rset.hpp"
#include "sqlab/set_expr.hpp"

namespace sqlab {

/// A consecutive pair of elements, additive (gap hi - lo) or multiplicative
/// (gap hi / lo, elements positive).
struct ShiftPair {
  Rat lo, hi;
  GroupLaw law = GroupLaw::Additive;

  Rat width() const { return law == GroupLaw::Additive ? hi - lo : hi / lo; }
};

struct PairSelection {
  ShiftPair nearest;  // consecutive pair with the minimal gap
  ShiftPair second;   // minimal gap among the remaining consecutive pairs
};

/// Nearest and second-nearest consecutive pairs of a. Ties break toward the
/// smallest left endpoint. Requires |a| >= 3; the multiplicative flavor
/// additionally requires positive elements.
PairSelection select_pairs(const RSet& a, GroupLaw law);

struct Witness {
  Rat value;
  HalfOpen locator;
};

/// Explicit elements realizing a counting lower bound, each carrying the
/// half-open interval that locates it. `verified` is set only when every
/// witness was re-checked for membership in the evaluated target set, the
/// witnesses are pairwise distinct, each lies in its locator, and the total
/// reaches guaranteed_count.
struct WitnessCert {
  std::string target_text;
  std::vector<Witness> witnesses;
  long long guaranteed_count = 0;
  bool verified = false;
};

/// Re-runs the full verification of a certificate against fresh evaluation.
bool verify_witness_cert(const WitnessCert& cert, const Bindings& bindings,
                         const EvalOptions& opt = {});

/// Interval-squeezing witnesses for f(A+h) + f(A+h') - f(A+h) (additive law,
/// target over set name "A") or (zA+1)(z'A+1)/(zA+1) (multiplicative law,
/// h = (z, z')). Requires the spacing condition: every consecutive gap of A
/// is at least the pair width; f certified convex increasing on the shifted
/// range. Guarantees exactly |A|(|A|-1)/2 witnesses.
WitnessCert squeeze_witnesses(const RSet& a, const ConvexMap& f, const ShiftPair& h,
                              const EvalOptions& opt = {});

/// Dyadic decomposition of the consecutive gaps of a set by multiplicity.
struct GapDecomposition {
  GroupLaw law = GroupLaw::Additive;
  RSet gaps;                             // D: distinct consecutive gaps
  std::vector<long long> multiplicity;   // r(d), aligned with gaps
  long long level = 0;                   // L = 2^k; class is r in (L/2, L]
  RSet chosen;                           // D': gaps of the chosen class
  long long m = 0;                       // |D'|

  long long multiplicity_of(const Rat& gap) const;
};

/// Chooses the dyadic multiplicity class maximizing m*L (ties: smaller L).
/// Guarantees m*L >= (|x|-1)/(1 + ceil(log2(|x|-1))). Requires |x| >= 2.
GapDecomposition gap_decompose(const RSet& x, GroupLaw law = GroupLaw::Additive);

/// Witness certificates for X+X-X inside (x_1, x_N] and for
/// F(X)+F(X)-F(X) inside (F(x_1), F(x_N)], built from the gap classes.
/// F must certify strictly increasing and strictly convex or concave on
/// [min X, max X]. Requires |x| >= 2.
std::pair<WitnessCert, WitnessCert> triple_sum_witnesses(const RSet& x, const ConvexMap& f,
                                                         const EvalOptions& opt = {});

struct BoxEntry {
  std::size_t k1 = 0, k2 = 0;  // 1-based element indices
  Box box;
  std::vector<std::pair<Rat, Rat>> points;
  bool contained = false;  // every point verified inside the box
};

struct BoxFamily {
  std::vector<BoxEntry> boxes;
  bool disjoint = false;
  /// Indices into `boxes` of an overlapping pair, when disjointness fails.
  std::optional<std::pair<std::size_t, std::size_t>> overlap;
  bool all_contained = false;
};

struct BoxOptions {
  /// When false, a spacing violation is not an error; the disjointness
  /// verification simply reports the overlapping pair.
  bool enforce_spacing = true;
};

/// The disjoint-box family: for every pair k1, k2 > N/2 the box
/// (f1(a_k1+h1), f1(a_k1+h1')] x (f2(a_k2+h2), f2(a_k2+h2')], holding the
/// shifted-difference points indexed by 1 <= j1, j2 <= N/2. Multiplicative
/// law replaces f(a+h) by h*a + 1 throughout.
BoxFamily box_witnesses(const RSet& a, const ConvexMap& f1, const ConvexMap& f2,
                        const ShiftQuadruple& h, const BoxOptions& bopt = {});

/// Combined pipeline: convexity partition, boxes, and per-box triple-sum
/// constructions on A'' = A' cap best partition piece.
struct CombinedExpanderReport {
  ShiftQuadruple shifts;
  ConvexityPartition partition;
  std::size_t piece = 0;   // chosen piece index
  RSet a_lower;            // A': smallest floor(N/2) elements
  RSet a_core;             // A'' = A' restricted to the chosen piece
  BoxFamily boxes;
  WitnessCert cert1, cert2;
  long long lhs1 = 0, lhs2 = 0;  // exact sizes of the two seven-term sets
  /// Product of per-box floor counts summed over boxes (2-D grid floor).
  long long grid_floor = 0;
  /// lhs1*lhs2 / (N^5 / (W log2 N)^3); report only.
  double ratio = 0.0;
};

CombinedExpanderReport combined_expander_run(const RSet& a, const ConvexMap& f1,
                                             const ConvexMap& f2, const ShiftQuadruple& h,
                                             const EvalOptions& opt = {});

/// Seven-term expression |2f(A+h) - 2f(A+h) + 2f(A+h') - f(A+h')| over the
/// named set; the multiplicative law yields the product-ratio form
/// (zA+1)^(2)(z'A+1)^(2) / ((zA+1)^(2)(z'A+1)).
ExprPtr seven_term_expr(const ConvexMap& f, const ShiftPair& h, const std::string& set_name);

/// Catalogue of named growth quantities.
struct ExpanderRow {
  std::string key;
  std::string expr;
  long long size = -1;
  bool aborted = false;   // hit the size cap
  double beta = 0.0;      // reference exponent
  double ratio = 0.0;     // size / |input|^beta, 0 when aborted
  std::string note;
};

struct NamedExpanderOptions {
  /// Scan every pair (z, z') and report the maximal size instead of the
  /// constructive nearest pair. Only honoured for |x| <= exhaustive_limit.
  bool exhaustive_pairs = false;
  std::size_t exhaustive_limit = 24;
  EvalOptions eval;
};

std::vector<std::string> named_quantity_keys();
/// Exact size of one named quantity on x; throws SizeLimitError on cap.
long long named_quantity_size(const std::string& key, const RSet& x,
                              const NamedExpanderOptions& opt = {});
/// Full catalogue evaluation; rows that hit the size cap are marked aborted.
std::vector<ExpanderRow> named_expanders(const RSet& x, const NamedExpanderOptions& opt = {});

}  // namespace sqlab

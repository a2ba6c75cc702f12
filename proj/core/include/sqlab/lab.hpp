#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sqlab/convexity.hpp"
#include "sqlab/dotprod.hpp"
#include "sqlab/rset.hpp"
#include "sqlab/set_expr.hpp"

namespace sqlab {

/// Deterministic input-family generator: the output is a function of
/// (kind, parameters, seed) only.
struct Family {
  enum class Kind {
    Interval,     // {1..n}
    Geometric,    // {base^1 .. base^n}
    Squares,      // {1, 4, ..., n^2}
    RandomInts,   // n distinct integers in [1, universe]
    RandomRats,   // n distinct positive rationals
    ConvexSeq,    // {f(1) .. f(n)} for a convex map f
    Grid,         // [n] x [n] points
    LinesConfig,  // points (x, s*x), s in slopes, x in [points_per_line]
  };

  Kind kind = Kind::Interval;
  long long n = 0;
  Rat base = Rat(2);
  long long universe = 1000;
  std::uint64_t seed = 0;
  std::optional<ConvexMap> map;
  std::vector<Rat> slopes;          // LinesConfig; empty means {1..n}
  long long points_per_line = 0;    // LinesConfig
  bool with_axis = false;           // LinesConfig: also adds [ppl] x {0}

  static Family interval(long long n);
  static Family geometric(long long n, Rat base);
  static Family squares(long long n);
  static Family random_ints(long long n, long long universe, std::uint64_t seed);
  static Family random_rats(long long n, long long universe, std::uint64_t seed);
  static Family convex_seq(long long n, ConvexMap map);
  static Family grid(long long n);
  static Family lines_config(std::vector<Rat> slopes, long long points_per_line, bool with_axis);

  bool yields_points() const { return kind == Kind::Grid || kind == Kind::LinesConfig; }
  std::string str() const;
};

RSet generate_set(const Family& f);
PointSet generate_points(const Family& f);

/// One sweep row; aborted rows hit the size cap and are excluded from fits.
struct SweepRow {
  long long n = 0;
  long long size = -1;
  bool aborted = false;
};

struct GrowthReport {
  std::string quantity;
  std::string family;
  std::vector<SweepRow> rows;
  double exponent = 0.0;   // least-squares slope of log2(size) vs log2(n)
  double intercept = 0.0;
  double max_residual = 0.0;
  long long fitted_rows = 0;
};

/// Ordinary least squares on (log2 n, log2 size) over completed rows. The
/// one place floating point is allowed: fitting and reporting.
void fit_loglog(GrowthReport& report);

using QuantityFn = std::function<long long(const RSet&)>;

/// Evaluates the quantity on the family at each n; a SizeLimitError marks
/// the row aborted and the sweep continues.
GrowthReport sweep(const std::string& quantity_label, const QuantityFn& quantity,
                   Family family_template, const std::vector<long long>& ns);

/// Inclusive range with step, e.g. 16..256 step 16.
std::vector<long long> n_range(long long lo, long long hi, long long step);

/// Simulated-annealing search over n-element subsets of [1, universe]
/// minimizing log|eval(expr)| / log n. Single replace-one-element moves,
/// geometric cooling. Bitwise reproducible for a fixed seed.
struct AnnealSchedule {
  long long iterations = 2000;
  double t0 = 0.5;
  double cooling = 0.95;        // applied every steps_per_temp proposals
  long long steps_per_temp = 100;
};

struct TracePoint {
  long long iteration = 0;
  double best = 0.0;
};

struct SearchResult {
  RSet best_set;
  double best_objective = 0.0;
  std::vector<TracePoint> trace;  // best-so-far, non-increasing
  long long evaluations = 0;
};

SearchResult extremal_search(const ExprPtr& expr, const std::string& var_name, long long n,
                             long long universe, const AnnealSchedule& schedule,
                             std::uint64_t seed, const EvalOptions& opt = {});

}  // namespace sqlab

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "sqlab/expanders.hpp"
#include "sqlab/rat.hpp"
#include "sqlab/rset.hpp"

namespace sqlab {

struct Point {
  Rat x, y;

  bool is_origin() const { return x.is_zero() && y.is_zero(); }
  /// p . q = p_x q_x + p_y q_y
  Rat dot(const Point& o) const { return x * o.x + y * o.y; }
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (auto c = a.x <=> b.x; c != std::strong_ordering::equal) return c;
    return a.y <=> b.y;
  }
};

/// Canonical finite planar point set (sorted, deduplicated).
class PointSet {
 public:
  PointSet() = default;
  static PointSet from_vector(std::vector<Point> pts);

  bool empty() const { return p_.empty(); }
  std::size_t size() const { return p_.size(); }
  const Point& operator[](std::size_t i) const { return p_[i]; }
  auto begin() const { return p_.begin(); }
  auto end() const { return p_.end(); }
  bool contains(const Point& p) const;

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.p_ == b.p_; }

 private:
  std::vector<Point> p_;
};

/// Direction of a line through the origin: unique per line. Nonvertical
/// lines carry their slope dy/dx; the vertical line is flagged.
struct Slope {
  bool vertical = false;
  Rat value;  // dy/dx; 0 for the x-axis

  static Slope of_point(const Point& p);  // p != origin
  bool is_positive() const { return !vertical && value.sign() > 0; }
  bool is_negative() const { return !vertical && value.sign() < 0; }
  std::string str() const { return vertical ? "inf" : value.str(); }
  friend bool operator==(const Slope& a, const Slope& b) {
    return a.vertical == b.vertical && a.value == b.value;
  }
  friend std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
    if (a.vertical != b.vertical) return a.vertical <=> b.vertical;  // vertical sorts last
    return a.value <=> b.value;
  }
};

/// Exact quarter turn (x, y) -> (-y, x); preserves every dot product.
PointSet quarter_turn(const PointSet& p);

/// All dot products over ordered pairs, p = q included.
RSet dot_product_set(const PointSet& p);

/// Partition of P minus the origin by lines through the origin.
struct OriginLines {
  bool origin_present = false;
  std::vector<std::pair<Slope, std::vector<Point>>> classes;  // sorted by slope
};
OriginLines origin_line_decomposition(const PointSet& p);

/// Checks |{lines perpendicular to the origin-line of p incident to P}| ==
/// |{p . q : q in P}| by computing both sides independently. p must not be
/// the origin.
bool perp_line_identity_check(const PointSet& p_set, const Point& p);

/// Dyadic class of origin-lines maximizing (number of lines) * (max points
/// per line); guarantees lines * m >= |P minus origin| / (1 + ceil(log2 |P|)).
struct RichLines {
  std::vector<Slope> slopes;
  long long m = 0;  // largest |line cap P| in the class; every line in the
                    // class holds more than m/2 points
};
RichLines dyadic_rich_lines(const PointSet& p);

/// Instrumented run of the dot-product growth pipeline on a concrete point
/// set. Inapplicable structure is a verdict, not an error.
struct DotPipelineReport {
  bool applicable = false;
  std::string inapplicable_reason;

  bool quarter_turn_applied = false;
  long long line_count = 0;          // |L|: all origin-lines of P
  RichLines rich;                    // L' and M (before the sign filter)
  std::vector<Slope> rich_positive;  // positive-slope part of L'
  long long p_prime_size = 0;        // |P'|

  Rat x0;
  std::vector<Slope> lines_at_x0;  // L'' = L(x0)
  RSet slope_set;                  // S
  Rat s, s_prime;                  // the working pair from S
  RSet xs, xs_prime;               // X(s), X(s')
  Rat a;                           // dilation with Z = X(s) cap a X(s')
  RSet z;

  long long lambda_size = 0;  // |dot_product_set(P)|
  long long lambda1 = 0, lambda2 = 0, lambda3 = 0;
  bool identity_lambda1 = false;  // lambda1 set == X(s)X(s')(1+ss')
  bool identity_lambda2 = false;  // lambda2 set == x0 * Z(1+sS)
  bool identity_lambda3 = false;  // lambda3 set == (x0/a) * Z(1+s'S)
  bool inclusions_hold = false;   // lambda_i subset of Lambda(P), elementwise
  bool pigeonhole_lines = false;  // |L(x0)| |X| >= |P'|
  bool pigeonhole_z = false;      // |Z| |X(s)/X(s')| >= |X(s)||X(s')|
  std::optional<bool> axis_bijection;  // |{p.q}| == |x-coords| for an axis point
  Rat c;                          // exponent constant in use; report only
};

DotPipelineReport dot_pipeline_run(const PointSet& p, const Rat& c = Rat(1, 3057),
                                   const EvalOptions& opt = {});

}  // namespace sqlab

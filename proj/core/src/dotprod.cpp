#include "sqlab/dotprod.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_set>

#include "sqlab/errors.hpp"

namespace sqlab {

PointSet PointSet::from_vector(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  PointSet s;
  s.p_ = std::move(pts);
  return s;
}

bool PointSet::contains(const Point& p) const {
  return std::binary_search(p_.begin(), p_.end(), p);
}

Slope Slope::of_point(const Point& p) {
  if (p.is_origin()) throw PreconditionError("origin-point", "the origin lies on every line");
  if (p.x.is_zero()) return {true, Rat(0)};
  return {false, p.y / p.x};
}

PointSet quarter_turn(const PointSet& p) {
  std::vector<Point> out;
  out.reserve(p.size());
  for (const Point& q : p) out.push_back({-q.y, q.x});
  return PointSet::from_vector(std::move(out));
}

RSet dot_product_set(const PointSet& p) {
  std::unordered_set<Rat, RatHash> acc;
  acc.reserve(p.size() * p.size());
  for (const Point& u : p) {
    for (const Point& v : p) acc.insert(u.dot(v));
  }
  std::vector<Rat> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  return RSet::from_sorted_unique(std::move(out));
}

OriginLines origin_line_decomposition(const PointSet& p) {
  OriginLines lines;
  std::map<Slope, std::vector<Point>> classes;
  for (const Point& q : p) {
    if (q.is_origin()) {
      lines.origin_present = true;
      continue;
    }
    classes[Slope::of_point(q)].push_back(q);
  }
  lines.classes.assign(classes.begin(), classes.end());
  return lines;
}

bool perp_line_identity_check(const PointSet& p_set, const Point& p) {
  if (p.is_origin()) {
    throw PreconditionError("origin-point", "dot products with the origin are all zero");
  }
  // side 1: distinct dot products with p
  std::unordered_set<Rat, RatHash> dots;
  for (const Point& q : p_set) dots.insert(p.dot(q));

  // side 2: distinct lines perpendicular to the origin-line of p that meet
  // P. A perpendicular line has normal parallel to p; normalize the normal
  // projectively and identify the line through q by its constant term.
  Rat nx = p.x, ny = p.y;
  if (!nx.is_zero()) {
    ny = ny / nx;  // normal (1, y/x)
    nx = Rat(1);
  } else {
    nx = Rat(0);  // vertical direction: normal (0, 1)
    ny = Rat(1);
  }
  std::unordered_set<Rat, RatHash> constants;
  for (const Point& q : p_set) constants.insert(nx * q.x + ny * q.y);
  return dots.size() == constants.size();
}

RichLines dyadic_rich_lines(const PointSet& p) {
  OriginLines lines = origin_line_decomposition(p);
  RichLines rich;
  if (lines.classes.empty()) return rich;

  // bucket k holds lines with point count in (2^(k-1), 2^k]
  std::map<int, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < lines.classes.size(); ++i) {
    const auto cnt = static_cast<unsigned long long>(lines.classes[i].second.size());
    buckets[static_cast<int>(std::bit_width(cnt - 1))].push_back(i);
  }
  long long best_score = -1;
  long long best_m = 0;
  const std::vector<std::size_t>* best_bucket = nullptr;
  for (const auto& [k, idx] : buckets) {
    long long m = 0;
    for (std::size_t i : idx) {
      m = std::max(m, static_cast<long long>(lines.classes[i].second.size()));
    }
    const long long score = static_cast<long long>(idx.size()) * m;
    if (score > best_score || (score == best_score && m < best_m)) {
      best_score = score;
      best_m = m;
      best_bucket = &idx;
    }
  }
  rich.m = best_m;
  for (std::size_t i : *best_bucket) rich.slopes.push_back(lines.classes[i].first);
  std::sort(rich.slopes.begin(), rich.slopes.end());
  return rich;
}

namespace {

RSet xcoords_of_class(const std::vector<Point>& pts) {
  std::vector<Rat> xs;
  xs.reserve(pts.size());
  for (const Point& q : pts) xs.push_back(q.x);
  return RSet::from_vector(std::move(xs));
}

}  // namespace

DotPipelineReport dot_pipeline_run(const PointSet& input, const Rat& c, const EvalOptions& opt) {
  DotPipelineReport rep;
  rep.c = c;

  OriginLines lines = origin_line_decomposition(input);
  if (lines.classes.empty()) {
    rep.inapplicable_reason = "no points besides the origin";
    return rep;
  }
  rep.line_count = static_cast<long long>(lines.classes.size());

  // Majority sign among the rich lines; a negative majority is rotated to
  // positive by an exact quarter turn (dot products unchanged).
  PointSet p = input;
  RichLines rich = dyadic_rich_lines(p);
  long long pos = 0, neg = 0;
  for (const Slope& s : rich.slopes) {
    if (s.is_positive()) ++pos;
    if (s.is_negative()) ++neg;
  }
  if (neg > pos) {
    p = quarter_turn(p);
    rep.quarter_turn_applied = true;
    lines = origin_line_decomposition(p);
    rich = dyadic_rich_lines(p);
  }
  rep.rich = rich;
  for (const Slope& s : rich.slopes) {
    if (s.is_positive()) rep.rich_positive.push_back(s);
  }
  if (rep.rich_positive.size() < 2) {
    rep.inapplicable_reason = "fewer than 2 positive-slope rich lines after the sign filter";
    return rep;
  }

  // P' = points on the positive-slope rich lines; x-coordinates per line.
  std::map<Slope, RSet> line_xs;
  long long p_prime = 0;
  for (const auto& [slope, pts] : lines.classes) {
    if (std::find(rep.rich_positive.begin(), rep.rich_positive.end(), slope) !=
        rep.rich_positive.end()) {
      line_xs[slope] = xcoords_of_class(pts);
      p_prime += static_cast<long long>(pts.size());
    }
  }
  rep.p_prime_size = p_prime;

  // x0 maximizing the number of rich lines meeting the vertical line x=x0.
  std::map<Rat, long long> lines_by_x;
  for (const auto& [slope, xs] : line_xs) {
    for (const Rat& x : xs) ++lines_by_x[x];
  }
  const long long x_count = static_cast<long long>(lines_by_x.size());
  Rat x0;
  long long best = 0;
  for (const auto& [x, cnt] : lines_by_x) {
    if (cnt > best) {
      best = cnt;
      x0 = x;
    }
  }
  rep.x0 = x0;
  rep.pigeonhole_lines = best * x_count >= p_prime;

  std::vector<Rat> slope_values;
  for (const auto& [slope, xs] : line_xs) {
    if (xs.contains(x0)) {
      rep.lines_at_x0.push_back(slope);
      slope_values.push_back(slope.value);
    }
  }
  rep.slope_set = RSet::from_vector(slope_values);
  if (rep.slope_set.size() < 2) {
    rep.inapplicable_reason = "fewer than 2 rich lines meet the vertical line x=x0";
    return rep;
  }

  // Working pair: nearest multiplicative consecutive pair of S.
  if (rep.slope_set.size() >= 3) {
    ShiftPair nearest = select_pairs(rep.slope_set, GroupLaw::Multiplicative).nearest;
    rep.s = nearest.lo;
    rep.s_prime = nearest.hi;
  } else {
    rep.s = rep.slope_set[0];
    rep.s_prime = rep.slope_set[1];
  }
  rep.xs = line_xs.at(Slope{false, rep.s});
  rep.xs_prime = line_xs.at(Slope{false, rep.s_prime});

  // a maximizing |X(s) cap a X(s')| over the ratio set.
  RSet ratios = set_div(rep.xs, rep.xs_prime, opt);
  long long best_z = -1;
  for (const Rat& cand : ratios) {
    RSet zc = set_intersect(rep.xs, set_dilate(rep.xs_prime, cand));
    if (static_cast<long long>(zc.size()) > best_z) {
      best_z = static_cast<long long>(zc.size());
      rep.a = cand;
      rep.z = zc;
    }
  }
  rep.pigeonhole_z = best_z * static_cast<long long>(ratios.size()) >=
                     static_cast<long long>(rep.xs.size()) *
                         static_cast<long long>(rep.xs_prime.size());

  // Lambda subfamilies, built from actual point pairs.
  RSet lambda_all = dot_product_set(p);
  rep.lambda_size = static_cast<long long>(lambda_all.size());

  std::vector<Rat> l1_vals;
  for (const Rat& x : rep.xs) {
    Point u{x, rep.s * x};
    for (const Rat& xp : rep.xs_prime) {
      l1_vals.push_back(u.dot({xp, rep.s_prime * xp}));
    }
  }
  RSet lambda1 = RSet::from_vector(std::move(l1_vals));

  std::vector<Rat> l2_vals, l3_vals;
  RSet a_inv_z = set_dilate(rep.z, rep.a.recip());
  for (const Rat& s1 : rep.slope_set) {
    Point q{x0, s1 * x0};
    for (const Rat& x : rep.z) l2_vals.push_back(Point{x, rep.s * x}.dot(q));
    for (const Rat& x : a_inv_z) l3_vals.push_back(Point{x, rep.s_prime * x}.dot(q));
  }
  RSet lambda2 = RSet::from_vector(std::move(l2_vals));
  RSet lambda3 = RSet::from_vector(std::move(l3_vals));
  rep.lambda1 = static_cast<long long>(lambda1.size());
  rep.lambda2 = static_cast<long long>(lambda2.size());
  rep.lambda3 = static_cast<long long>(lambda3.size());

  // identities with the product-set forms
  const Rat one(1);
  RSet s_dil = set_shift(set_dilate(rep.slope_set, rep.s), one);        // 1 + sS
  RSet sp_dil = set_shift(set_dilate(rep.slope_set, rep.s_prime), one); // 1 + s'S
  rep.identity_lambda1 =
      lambda1 == set_dilate(set_mul(rep.xs, rep.xs_prime, opt), one + rep.s * rep.s_prime);
  rep.identity_lambda2 = lambda2 == set_dilate(set_mul(rep.z, s_dil, opt), x0);
  rep.identity_lambda3 = lambda3 == set_dilate(set_mul(rep.z, sp_dil, opt), x0 / rep.a);

  // inclusions, element by element
  auto included = [&lambda_all](const RSet& s) {
    for (const Rat& v : s) {
      if (!lambda_all.contains(v)) return false;
    }
    return true;
  };
  rep.inclusions_hold = included(lambda1) && included(lambda2) && included(lambda3);

  // bijection with vertical lines through an x-axis point of P
  for (const auto& [slope, pts] : lines.classes) {
    if (!slope.vertical && slope.value.is_zero()) {
      std::vector<Rat> all_x;
      for (const Point& q : p) all_x.push_back(q.x);
      RSet xset = RSet::from_vector(std::move(all_x));
      const Point& axis_pt = pts.front();  // nonzero by construction
      std::unordered_set<Rat, RatHash> dots;
      for (const Point& q : p) dots.insert(axis_pt.dot(q));
      rep.axis_bijection = dots.size() == xset.size();
      break;
    }
  }

  rep.applicable = true;
  return rep;
}

}  // namespace sqlab

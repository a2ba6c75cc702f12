#include "sqlab/expanders.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "sqlab/errors.hpp"

namespace sqlab {

namespace {

Rat g_op(GroupLaw law, const Rat& a, const Rat& b) {
  return law == GroupLaw::Additive ? a + b : a * b;
}

Rat g_gap(GroupLaw law, const Rat& hi, const Rat& lo) {
  return law == GroupLaw::Additive ? hi - lo : hi / lo;
}

/// f(a + h) in the additive law; h*a + 1 in the multiplicative law (the
/// rational action of the log-shift map at multiplicative shift h).
Rat f_value(GroupLaw law, const ConvexMap& f, const Rat& shift, const Rat& a) {
  if (law == GroupLaw::Multiplicative) return shift * a + Rat(1);
  return f.apply(a + shift);
}

void require_positive_set(const RSet& a, const char* check) {
  if (!a.all_positive()) {
    throw PreconditionError(check, "multiplicative constructions need positive elements");
  }
}

void require_shift_map(GroupLaw law, const ConvexMap& f, const char* check) {
  if ((law == GroupLaw::Multiplicative) != f.is_log_shift()) {
    throw PreconditionError(check,
                            "multiplicative shifts pair with the log-shift map, additive "
                            "shifts with polynomial maps");
  }
}

/// Certified convex + increasing, with every point of `needed` inside the
/// declared domain of f.
void require_certified(const ConvexMap& f, const std::vector<Rat>& needed, const char* check) {
  if (f.is_log_shift()) return;  // closed-form certificate
  auto res = certify_convex(f, f.declared_domain());
  const auto* cert = std::get_if<ConvexityCertificate>(&res);
  if (cert == nullptr || cert->direction != Curvature::Convex) {
    std::string why = cert != nullptr ? "map is concave"
                                      : std::get<ConvexityRejection>(res).reason;
    throw PreconditionError(check, "convexity rejection: " + why);
  }
  for (const Rat& t : needed) {
    if (!f.declared_domain().contains(t)) {
      throw PreconditionError(check, "argument " + t.str() + " outside the certified domain " +
                                         f.declared_domain().str());
    }
  }
}

void check_spacing(const RSet& a, GroupLaw law, const Rat& width, const char* check) {
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (g_gap(law, a[i + 1], a[i]) < width) {
      throw PreconditionError(check, "spacing violated between elements " + a[i].str() + " and " +
                                         a[i + 1].str() + " (index " + std::to_string(i + 1) +
                                         "); need gap >= " + width.str());
    }
  }
}

/// f(NAME + h) as an expression: additive apply(f, NAME+h), multiplicative
/// h*NAME + 1.
ExprPtr shifted_map_expr(GroupLaw law, const ConvexMap& f, const Rat& h, const std::string& name) {
  if (law == GroupLaw::Multiplicative) {
    return SetExpr::shift(SetExpr::dilate(SetExpr::var(name), h), Rat(1));
  }
  return SetExpr::map_apply(f, SetExpr::shift(SetExpr::var(name), h));
}

/// Nearest consecutive pair for sets of size >= 2 (select_pairs needs 3).
ShiftPair nearest_pair_any(const RSet& a, GroupLaw law) {
  if (a.size() < 2) throw PreconditionError("input-size", "need at least 2 elements");
  if (law == GroupLaw::Multiplicative) require_positive_set(a, "positivity");
  std::size_t best = 0;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    if (g_gap(law, a[i + 1], a[i]) < g_gap(law, a[best + 1], a[best])) best = i;
  }
  return {a[best], a[best + 1], law};
}

}  // namespace

PairSelection select_pairs(const RSet& a, GroupLaw law) {
  if (a.size() < 3) {
    throw PreconditionError("input-size", "pair selection needs at least 3 elements");
  }
  if (law == GroupLaw::Multiplicative) require_positive_set(a, "positivity");
  std::vector<Rat> gaps;
  gaps.reserve(a.size() - 1);
  for (std::size_t i = 0; i + 1 < a.size(); ++i) gaps.push_back(g_gap(law, a[i + 1], a[i]));
  std::size_t best = 0;
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    if (gaps[i] < gaps[best]) best = i;  // ties keep the smallest left endpoint
  }
  std::size_t second = best == 0 ? 1 : 0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (i == best) continue;
    if (gaps[i] < gaps[second]) second = i;
  }
  return {ShiftPair{a[best], a[best + 1], law}, ShiftPair{a[second], a[second + 1], law}};
}

bool verify_witness_cert(const WitnessCert& cert, const Bindings& bindings,
                         const EvalOptions& opt) {
  if (static_cast<long long>(cert.witnesses.size()) < cert.guaranteed_count) return false;
  RSet target = eval(parse_expr(cert.target_text), bindings, opt);
  std::vector<Rat> values;
  values.reserve(cert.witnesses.size());
  for (const Witness& w : cert.witnesses) {
    if (!w.locator.contains(w.value)) return false;
    if (!target.contains(w.value)) return false;
    values.push_back(w.value);
  }
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) return false;
  // distinct locators must be pairwise disjoint
  std::vector<HalfOpen> locs;
  locs.reserve(cert.witnesses.size());
  for (const Witness& w : cert.witnesses) locs.push_back(w.locator);
  std::sort(locs.begin(), locs.end(), [](const HalfOpen& p, const HalfOpen& q) {
    return p.lo < q.lo || (p.lo == q.lo && p.hi < q.hi);
  });
  locs.erase(std::unique(locs.begin(), locs.end(),
                         [](const HalfOpen& p, const HalfOpen& q) {
                           return p.lo == q.lo && p.hi == q.hi;
                         }),
             locs.end());
  for (std::size_t i = 0; i + 1 < locs.size(); ++i) {
    if (locs[i].overlaps(locs[i + 1])) return false;
  }
  return true;
}

WitnessCert squeeze_witnesses(const RSet& a, const ConvexMap& f, const ShiftPair& h,
                              const EvalOptions& opt) {
  const GroupLaw law = h.law;
  require_shift_map(law, f, "map-kind");
  if (a.empty()) throw PreconditionError("input-size", "empty set");
  if (law == GroupLaw::Multiplicative) {
    require_positive_set(a, "positivity");
    if (!(Rat(0) < h.lo && h.lo < h.hi)) {
      throw PreconditionError("shift-order", "need 0 < z < z'");
    }
  } else if (!(h.lo < h.hi)) {
    throw PreconditionError("shift-order", "need h < h'");
  }
  check_spacing(a, law, h.width(), "spacing");
  std::vector<Rat> needed;
  for (const Rat& t : a) {
    needed.push_back(t + h.lo);
    needed.push_back(t + h.hi);
  }
  require_certified(f, needed, "convexity");

  WitnessCert cert;
  ExprPtr lo_part = shifted_map_expr(law, f, h.lo, "A");
  ExprPtr hi_part = shifted_map_expr(law, f, h.hi, "A");
  if (law == GroupLaw::Additive) {
    cert.target_text = expr_text(SetExpr::diff(SetExpr::sum(lo_part, hi_part), lo_part));
  } else {
    cert.target_text = expr_text(SetExpr::ratio(SetExpr::product(lo_part, hi_part), lo_part));
  }

  const std::size_t n = a.size();
  std::vector<Rat> flo(n), fhi(n);
  for (std::size_t i = 0; i < n; ++i) {
    flo[i] = f_value(law, f, h.lo, a[i]);
    fhi[i] = f_value(law, f, h.hi, a[i]);
  }
  // For i < j the small increment f(a_i+h') `-` f(a_i+h) slides into the
  // larger interval at position j.
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      Rat value = g_op(law, flo[j], g_gap(law, fhi[i], flo[i]));
      cert.witnesses.push_back({std::move(value), HalfOpen{flo[j], fhi[j]}});
    }
  }
  cert.guaranteed_count = static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
  cert.verified = verify_witness_cert(cert, {{"A", a}}, opt);
  return cert;
}

long long GapDecomposition::multiplicity_of(const Rat& gap) const {
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (gaps[i] == gap) return multiplicity[i];
  }
  return 0;
}

GapDecomposition gap_decompose(const RSet& x, GroupLaw law) {
  if (x.size() < 2) throw PreconditionError("input-size", "singleton input has no gaps");
  if (law == GroupLaw::Multiplicative) require_positive_set(x, "positivity");
  std::map<Rat, long long> counts;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) ++counts[g_gap(law, x[i + 1], x[i])];

  GapDecomposition gd;
  gd.law = law;
  std::vector<Rat> gap_list;
  for (const auto& [d, r] : counts) {
    gap_list.push_back(d);
    gd.multiplicity.push_back(r);
  }
  gd.gaps = RSet::from_sorted_unique(gap_list);

  // dyadic classes: multiplicity r lands in (2^(k-1), 2^k]
  std::map<int, long long> class_m;
  for (long long r : gd.multiplicity) {
    const int k = static_cast<int>(std::bit_width(static_cast<unsigned long long>(r - 1)));
    ++class_m[k];
  }
  long long best_score = -1;
  int best_k = 0;
  for (const auto& [k, m] : class_m) {
    const long long score = m * (1LL << k);
    if (score > best_score) {  // ties keep the smaller level
      best_score = score;
      best_k = k;
    }
  }
  gd.level = 1LL << best_k;
  std::vector<Rat> chosen;
  for (std::size_t i = 0; i < gap_list.size(); ++i) {
    const long long r = gd.multiplicity[i];
    if (gd.level / 2 < r && r <= gd.level) chosen.push_back(gap_list[i]);
  }
  gd.chosen = RSet::from_sorted_unique(std::move(chosen));
  gd.m = static_cast<long long>(gd.chosen.size());
  return gd;
}

namespace {

/// Strictly increasing point sequence (xs[i], ys[i]) on a certified convex
/// or concave graph, with independent group laws per coordinate.
struct CurveSamples {
  GroupLaw x_law = GroupLaw::Additive;
  GroupLaw y_law = GroupLaw::Additive;
  std::vector<Rat> xs, ys;
};

struct TripleSide {
  std::vector<Witness> witnesses;
  long long floor = 0;
};

/// Witnesses for X+X-X in (x_1, x_N]: for i whose gap d_i lies in the
/// chosen class, every chosen gap d <= d_i puts x_i `+` d in (x_i, x_{i+1}].
TripleSide triple_x_side(const std::vector<Rat>& xs, GroupLaw law, const GapDecomposition& gd) {
  TripleSide side;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Rat d_i = g_gap(law, xs[i + 1], xs[i]);
    if (!gd.chosen.contains(d_i)) continue;
    for (const Rat& d : gd.chosen) {
      if (d_i < d) break;
      side.witnesses.push_back({g_op(law, xs[i], d), HalfOpen{xs[i], xs[i + 1]}});
    }
  }
  side.floor = static_cast<long long>(side.witnesses.size());
  return side;
}

/// Witnesses for F(X)+F(X)-F(X): within each chosen gap class, every
/// strictly smaller y-increment slides into (y_i, y_{i+1}].
TripleSide triple_y_side(const CurveSamples& s, const GapDecomposition& gd) {
  TripleSide side;
  std::map<Rat, std::vector<std::size_t>> index_classes;
  for (std::size_t i = 0; i + 1 < s.xs.size(); ++i) {
    const Rat d = g_gap(s.x_law, s.xs[i + 1], s.xs[i]);
    if (gd.chosen.contains(d)) index_classes[d].push_back(i);
  }
  for (const auto& [d, idx] : index_classes) {
    for (std::size_t i : idx) {
      const Rat dy_i = g_gap(s.y_law, s.ys[i + 1], s.ys[i]);
      std::vector<Rat> smaller;
      for (std::size_t j : idx) {
        const Rat dy_j = g_gap(s.y_law, s.ys[j + 1], s.ys[j]);
        if (dy_j < dy_i) smaller.push_back(dy_j);
      }
      std::sort(smaller.begin(), smaller.end());
      smaller.erase(std::unique(smaller.begin(), smaller.end()), smaller.end());
      for (const Rat& dy : smaller) {
        side.witnesses.push_back({g_op(s.y_law, s.ys[i], dy), HalfOpen{s.ys[i], s.ys[i + 1]}});
      }
    }
  }
  side.floor = static_cast<long long>(side.witnesses.size());
  return side;
}

}  // namespace

std::pair<WitnessCert, WitnessCert> triple_sum_witnesses(const RSet& x, const ConvexMap& f,
                                                         const EvalOptions& opt) {
  if (x.size() < 2) throw PreconditionError("input-size", "singleton input");
  const bool mult_y = f.is_log_shift();
  if (mult_y) {
    require_positive_set(x, "positivity");
  } else {
    auto res = certify_convex(f, f.declared_domain());
    if (!std::holds_alternative<ConvexityCertificate>(res)) {
      throw PreconditionError("convexity",
                              "map rejected: " + std::get<ConvexityRejection>(res).reason);
    }
    for (const Rat& t : x) {
      if (!f.declared_domain().contains(t)) {
        throw PreconditionError("convexity", "element " + t.str() + " outside certified domain");
      }
    }
  }

  CurveSamples s;
  s.x_law = GroupLaw::Additive;
  s.y_law = mult_y ? GroupLaw::Multiplicative : GroupLaw::Additive;
  s.xs.assign(x.begin(), x.end());
  for (const Rat& t : x) s.ys.push_back(f.apply(t));

  GapDecomposition gd = gap_decompose(x, GroupLaw::Additive);
  TripleSide xs_side = triple_x_side(s.xs, s.x_law, gd);
  TripleSide ys_side = triple_y_side(s, gd);

  WitnessCert cx;
  cx.target_text = "X+X-X";
  cx.witnesses = std::move(xs_side.witnesses);
  cx.guaranteed_count = xs_side.floor;
  cx.verified = verify_witness_cert(cx, {{"X", x}}, opt);

  WitnessCert cy;
  ExprPtr fx = mult_y ? SetExpr::shift(SetExpr::dilate(SetExpr::var("X"), f.scalar()), Rat(1))
                      : SetExpr::map_apply(f, SetExpr::var("X"));
  if (mult_y) {
    cy.target_text = expr_text(SetExpr::ratio(SetExpr::product(fx, fx), fx));
  } else {
    cy.target_text = expr_text(SetExpr::diff(SetExpr::sum(fx, fx), fx));
  }
  cy.witnesses = std::move(ys_side.witnesses);
  cy.guaranteed_count = ys_side.floor;
  cy.verified = verify_witness_cert(cy, {{"X", x}}, opt);
  return {std::move(cx), std::move(cy)};
}

BoxFamily box_witnesses(const RSet& a, const ConvexMap& f1, const ConvexMap& f2,
                        const ShiftQuadruple& h, const BoxOptions& bopt) {
  if (a.size() < 2) throw PreconditionError("input-size", "need at least 2 elements");
  const GroupLaw law = h.law;
  require_shift_map(law, f1, "map-kind");
  require_shift_map(law, f2, "map-kind");
  if (law == GroupLaw::Multiplicative) {
    require_positive_set(a, "positivity");
    if (!(Rat(0) < h.h1 && h.h1 < h.h1p && Rat(0) < h.h2 && h.h2 < h.h2p)) {
      throw PreconditionError("shift-order", "need 0 < z1 < z1' and 0 < z2 < z2'");
    }
  } else if (!(h.h1 < h.h1p && h.h2 < h.h2p)) {
    throw PreconditionError("shift-order", "need h1 < h1' and h2 < h2'");
  }
  const Rat width = max(g_gap(law, h.h1p, h.h1), g_gap(law, h.h2p, h.h2));
  if (bopt.enforce_spacing) check_spacing(a, law, width, "spacing");
  std::vector<Rat> needed1, needed2;
  for (const Rat& t : a) {
    needed1.push_back(t + h.h1);
    needed1.push_back(t + h.h1p);
    needed2.push_back(t + h.h2);
    needed2.push_back(t + h.h2p);
  }
  require_certified(f1, needed1, "convexity");
  require_certified(f2, needed2, "convexity");

  const std::size_t n = a.size();
  const std::size_t half = n / 2;
  BoxFamily fam;
  for (std::size_t k1 = half + 1; k1 <= n; ++k1) {
    for (std::size_t k2 = half + 1; k2 <= n; ++k2) {
      BoxEntry e;
      e.k1 = k1;
      e.k2 = k2;
      e.box.x = {f_value(law, f1, h.h1, a[k1 - 1]), f_value(law, f1, h.h1p, a[k1 - 1])};
      e.box.y = {f_value(law, f2, h.h2, a[k2 - 1]), f_value(law, f2, h.h2p, a[k2 - 1])};
      e.contained = true;
      for (std::size_t j1 = 1; j1 <= half; ++j1) {
        for (std::size_t j2 = 1; j2 <= half; ++j2) {
          Rat px = g_op(law, e.box.x.lo,
                        g_gap(law, f_value(law, f1, h.h1p, a[j1 - 1]),
                              f_value(law, f1, h.h1, a[j1 - 1])));
          Rat py = g_op(law, e.box.y.lo,
                        g_gap(law, f_value(law, f2, h.h2p, a[j2 - 1]),
                              f_value(law, f2, h.h2, a[j2 - 1])));
          if (!e.box.contains(px, py)) e.contained = false;
          e.points.emplace_back(std::move(px), std::move(py));
        }
      }
      fam.boxes.push_back(std::move(e));
    }
  }
  fam.disjoint = true;
  for (std::size_t i = 0; i < fam.boxes.size() && fam.disjoint; ++i) {
    for (std::size_t j = i + 1; j < fam.boxes.size(); ++j) {
      if (fam.boxes[i].box.overlaps(fam.boxes[j].box)) {
        fam.disjoint = false;
        fam.overlap = {i, j};
        break;
      }
    }
  }
  fam.all_contained = std::all_of(fam.boxes.begin(), fam.boxes.end(),
                                  [](const BoxEntry& e) { return e.contained; });
  return fam;
}

ExprPtr seven_term_expr(const ConvexMap& f, const ShiftPair& h, const std::string& set_name) {
  ExprPtr s = shifted_map_expr(h.law, f, h.lo, set_name);
  ExprPtr sp = shifted_map_expr(h.law, f, h.hi, set_name);
  if (h.law == GroupLaw::Additive) {
    // S + S + S' + S' - S - S - S'
    ExprPtr e = SetExpr::sum(s, s);
    e = SetExpr::sum(std::move(e), sp);
    e = SetExpr::sum(std::move(e), sp);
    e = SetExpr::diff(std::move(e), s);
    e = SetExpr::diff(std::move(e), s);
    e = SetExpr::diff(std::move(e), sp);
    return e;
  }
  // S^(2) S'^(2) / (S^(2) S')
  ExprPtr num = SetExpr::product(SetExpr::kfold(s, 2), SetExpr::kfold(sp, 2));
  ExprPtr den = SetExpr::product(SetExpr::kfold(s, 2), sp);
  return SetExpr::ratio(std::move(num), std::move(den));
}

CombinedExpanderReport combined_expander_run(const RSet& a, const ConvexMap& f1,
                                             const ConvexMap& f2, const ShiftQuadruple& h,
                                             const EvalOptions& opt) {
  if (a.size() < 2) throw PreconditionError("input-size", "need at least 2 elements");
  require_positive_set(a, "positivity");

  CombinedExpanderReport rep;
  rep.shifts = h;
  rep.partition = convexity_partition(f1, f2, h, Domain::greater_than(Rat(0)));
  rep.boxes = box_witnesses(a, f1, f2, h);  // enforces spacing and certification

  const std::size_t n = a.size();
  const std::size_t half = n / 2;
  std::vector<Rat> lower(a.begin(), a.begin() + static_cast<long>(half));
  rep.a_lower = RSet::from_sorted_unique(std::move(lower));

  // A'' = A' restricted to the partition piece holding most of A'.
  std::vector<std::vector<Rat>> by_piece(rep.partition.pieces.size());
  for (const Rat& t : rep.a_lower) by_piece[rep.partition.piece_index(t)].push_back(t);
  std::size_t best_piece = 0;
  for (std::size_t i = 1; i < by_piece.size(); ++i) {
    if (by_piece[i].size() > by_piece[best_piece].size()) best_piece = i;
  }
  rep.piece = best_piece;
  rep.a_core = RSet::from_sorted_unique(by_piece[best_piece]);
  if (!rep.a_lower.empty() &&
      static_cast<long long>(rep.a_core.size()) * rep.partition.piece_count() <
          static_cast<long long>(rep.a_lower.size())) {
    throw Error("internal: pigeonhole |A''| >= |A'|/W failed");
  }

  const GroupLaw law = h.law;
  rep.cert1.target_text = expr_text(seven_term_expr(f1, ShiftPair{h.h1, h.h1p, law}, "A"));
  rep.cert2.target_text = expr_text(seven_term_expr(f2, ShiftPair{h.h2, h.h2p, law}, "A"));

  // Base increments g(t) = f(t+h') `-` f(t+h) over A''; strictly increasing
  // since f is strictly convex. Per-box sequences differ only by the shift
  // f(a_k + h), so gap structure and witnesses translate.
  std::vector<Rat> gx, gy;
  for (const Rat& t : rep.a_core) {
    gx.push_back(g_gap(law, f_value(law, f1, h.h1p, t), f_value(law, f1, h.h1, t)));
    gy.push_back(g_gap(law, f_value(law, f2, h.h2p, t), f_value(law, f2, h.h2, t)));
  }

  if (rep.a_core.size() >= 2) {
    CurveSamples base{law, law, gx, gy};
    GapDecomposition gd = gap_decompose(RSet::from_sorted_unique(gx), law);
    TripleSide base_x = triple_x_side(base.xs, law, gd);
    TripleSide base_y = triple_y_side(base, gd);

    long long k1_count = 0, k2_count = 0;
    std::vector<bool> seen_k1(n + 1, false), seen_k2(n + 1, false);
    for (const BoxEntry& e : rep.boxes.boxes) {
      if (!seen_k1[e.k1]) {
        seen_k1[e.k1] = true;
        ++k1_count;
        const Rat cx = f_value(law, f1, h.h1, a[e.k1 - 1]);
        for (const Witness& w : base_x.witnesses) {
          rep.cert1.witnesses.push_back(
              {g_op(law, cx, w.value),
               HalfOpen{g_op(law, cx, w.locator.lo), g_op(law, cx, w.locator.hi)}});
        }
      }
      if (!seen_k2[e.k2]) {
        seen_k2[e.k2] = true;
        ++k2_count;
        const Rat cy = f_value(law, f2, h.h2, a[e.k2 - 1]);
        for (const Witness& w : base_y.witnesses) {
          rep.cert2.witnesses.push_back(
              {g_op(law, cy, w.value),
               HalfOpen{g_op(law, cy, w.locator.lo), g_op(law, cy, w.locator.hi)}});
        }
      }
    }
    rep.cert1.guaranteed_count = k1_count * base_x.floor;
    rep.cert2.guaranteed_count = k2_count * base_y.floor;
    rep.grid_floor = static_cast<long long>(rep.boxes.boxes.size()) * base_x.floor * base_y.floor;
  }

  Bindings b{{"A", a}};
  rep.cert1.verified = verify_witness_cert(rep.cert1, b, opt);
  rep.cert2.verified = verify_witness_cert(rep.cert2, b, opt);
  rep.lhs1 = static_cast<long long>(eval(parse_expr(rep.cert1.target_text), b, opt).size());
  rep.lhs2 = static_cast<long long>(eval(parse_expr(rep.cert2.target_text), b, opt).size());

  const double nn = static_cast<double>(n);
  const double w = static_cast<double>(rep.partition.piece_count());
  const double lg = std::max(std::log2(nn), 1.0);
  const double denom = std::pow(nn, 5) / std::pow(w * lg, 3);
  rep.ratio = static_cast<double>(rep.lhs1) * static_cast<double>(rep.lhs2) / denom;
  return rep;
}

// ---------------------------------------------------------------------------
// named quantity catalogue

namespace {

struct QuantityDef {
  std::string key;
  double beta;
  std::string note;
  /// Builds (expression, bindings) with the constructive pair choice.
  std::function<std::pair<ExprPtr, Bindings>(const RSet&)> build;
  /// Pair-parameterized form for the exhaustive scan; null when the
  /// quantity involves no pair.
  std::function<std::pair<ExprPtr, Bindings>(const RSet&, const Rat&, const Rat&)> build_pair;
};

ExprPtr shift_of(const std::string& name, const Rat& c) {
  return SetExpr::shift(SetExpr::var(name), c);
}

/// (z*NAME + 1)
ExprPtr zshift(const std::string& name, const Rat& z) {
  return SetExpr::shift(SetExpr::dilate(SetExpr::var(name), z), Rat(1));
}

/// (zX+1)^(2) (z'X+1)^(2) / ((zX+1)^(2) (z'X+1))
ExprPtr ratio52(const std::string& name, const Rat& z, const Rat& zp) {
  ExprPtr s = zshift(name, z);
  ExprPtr sp = zshift(name, zp);
  return SetExpr::ratio(SetExpr::product(SetExpr::kfold(s, 2), SetExpr::kfold(sp, 2)),
                        SetExpr::product(SetExpr::kfold(s, 2), sp));
}

/// Seven-term sum S+S+S'+S'-S-S-S' for S = (NAME+lo)^pow, S' = (NAME+hi)^pow.
ExprPtr seven_term_pow(const std::string& name, int pow, const Rat& lo, const Rat& hi) {
  ExprPtr s = SetExpr::eltwise_pow(shift_of(name, lo), pow);
  ExprPtr sp = SetExpr::eltwise_pow(shift_of(name, hi), pow);
  ExprPtr e = SetExpr::sum(s, s);
  e = SetExpr::sum(std::move(e), sp);
  e = SetExpr::sum(std::move(e), sp);
  e = SetExpr::diff(std::move(e), s);
  e = SetExpr::diff(std::move(e), s);
  e = SetExpr::diff(std::move(e), sp);
  return e;
}

const std::vector<QuantityDef>& catalogue() {
  static const std::vector<QuantityDef>* defs = [] {
    auto* v = new std::vector<QuantityDef>;
    auto add_pair_quantity = [v](std::string key, double beta, std::string note, GroupLaw law,
                                 std::function<std::pair<ExprPtr, Bindings>(
                                     const RSet&, const Rat&, const Rat&)> with_pair) {
      QuantityDef def;
      def.key = std::move(key);
      def.beta = beta;
      def.note = std::move(note);
      def.build_pair = with_pair;
      def.build = [law, with_pair](const RSet& x) {
        ShiftPair p = select_pairs(x, law).nearest;
        return with_pair(x, p.lo, p.hi);
      };
      v->push_back(std::move(def));
    };

    add_pair_quantity("quad", 2.0, "squares of nearest-pair shifts; optimal quadratic growth",
                      GroupLaw::Additive, [](const RSet& a, const Rat& lo, const Rat& hi) {
                        ExprPtr s = SetExpr::eltwise_pow(shift_of("A", lo), 2);
                        ExprPtr sp = SetExpr::eltwise_pow(shift_of("A", hi), 2);
                        return std::make_pair(SetExpr::diff(SetExpr::sum(s, sp), s),
                                              Bindings{{"A", a}});
                      });
    add_pair_quantity("prodshift52", 2.5, "ratio of products of shifted dilates",
                      GroupLaw::Multiplicative, [](const RSet& x, const Rat& z, const Rat& zp) {
                        return std::make_pair(ratio52("X", z, zp), Bindings{{"X", x}});
                      });
    add_pair_quantity("prodshift52-core", 2.5,
                      "ratio form on the even-index core, nearest multiplicative pair",
                      GroupLaw::Multiplicative, [](const RSet& x, const Rat& z, const Rat& zp) {
                        return std::make_pair(ratio52("X", z, zp),
                                              Bindings{{"X", every_second_element(x)}});
                      });
    add_pair_quantity("combo-quad", 2.0, "(zX+1)(z'X+1)/(zX+1), nearest multiplicative pair",
                      GroupLaw::Multiplicative, [](const RSet& x, const Rat& z, const Rat& zp) {
                        ExprPtr s = zshift("X", z);
                        ExprPtr sp = zshift("X", zp);
                        return std::make_pair(SetExpr::ratio(SetExpr::product(s, sp), s),
                                              Bindings{{"X", x}});
                      });
    add_pair_quantity("sp-product", 33.0 / 16.0, "(zX+1)^(4)(z'X+1)^(4), product-only form",
                      GroupLaw::Multiplicative, [](const RSet& x, const Rat& z, const Rat& zp) {
                        return std::make_pair(
                            SetExpr::product(SetExpr::kfold(zshift("X", z), 4),
                                             SetExpr::kfold(zshift("X", zp), 4)),
                            Bindings{{"X", x}});
                      });
    add_pair_quantity("cubes", 2.5, "seven-term cubes of nearest-pair shifts", GroupLaw::Additive,
                      [](const RSet& a, const Rat& lo, const Rat& hi) {
                        return std::make_pair(seven_term_pow("A", 3, lo, hi), Bindings{{"A", a}});
                      });
    add_pair_quantity("prodshift-alt", 2.5, "(a+A)^(2)(a'+A)^(2)/((a+A)^(2)(a'+A))",
                      GroupLaw::Additive, [](const RSet& a, const Rat& lo, const Rat& hi) {
                        ExprPtr s = shift_of("A", lo);
                        ExprPtr sp = shift_of("A", hi);
                        return std::make_pair(
                            SetExpr::ratio(
                                SetExpr::product(SetExpr::kfold(s, 2), SetExpr::kfold(sp, 2)),
                                SetExpr::product(SetExpr::kfold(s, 2), sp)),
                            Bindings{{"A", a}});
                      });
    add_pair_quantity("squares-cubes-sq", 2.5, "seven-term squares, shared nearest pair",
                      GroupLaw::Additive, [](const RSet& a, const Rat& lo, const Rat& hi) {
                        return std::make_pair(seven_term_pow("A", 2, lo, hi), Bindings{{"A", a}});
                      });
    add_pair_quantity("squares-cubes-cu", 2.5, "seven-term cubes, shared nearest pair",
                      GroupLaw::Additive, [](const RSet& a, const Rat& lo, const Rat& hi) {
                        return std::make_pair(seven_term_pow("A", 3, lo, hi), Bindings{{"A", a}});
                      });

    QuantityDef prodshift3;
    prodshift3.key = "prodshift3";
    prodshift3.beta = 2.0 + 1.0 / 32.0;
    prodshift3.note = "(AA+1)(AA+1)(AA+1)";
    prodshift3.build = [](const RSet& a) {
      ExprPtr aa1 =
          SetExpr::shift(SetExpr::product(SetExpr::var("A"), SetExpr::var("A")), Rat(1));
      return std::make_pair(SetExpr::kfold(std::move(aa1), 3), Bindings{{"A", a}});
    };
    v->push_back(std::move(prodshift3));

    QuantityDef g2var;
    g2var.key = "garaev-2var";
    g2var.beta = 2.0;
    g2var.note = "bB + (b'-b)B with nearest multiplicative pair";
    g2var.build = [](const RSet& b) {
      ShiftPair p = nearest_pair_any(b, GroupLaw::Multiplicative);
      return std::make_pair(SetExpr::sum(SetExpr::dilate(SetExpr::var("B"), p.lo),
                                         SetExpr::dilate(SetExpr::var("B"), p.hi - p.lo)),
                            Bindings{{"B", b}});
    };
    v->push_back(std::move(g2var));

    QuantityDef geq;
    geq.key = "garaev-eq";
    geq.beta = 2.0;
    geq.note = "b_max B + d_min B; equals |B|^2 exactly for positive integers";
    geq.build = [](const RSet& b) {
      ShiftPair p = nearest_pair_any(b, GroupLaw::Additive);
      return std::make_pair(SetExpr::sum(SetExpr::dilate(SetExpr::var("B"), b.max()),
                                         SetExpr::dilate(SetExpr::var("B"), p.hi - p.lo)),
                            Bindings{{"B", b}});
    };
    v->push_back(std::move(geq));

    QuantityDef cex;
    cex.key = "counterexample";
    cex.beta = 2.0;
    cex.note = "S+S+S+S-S-S-S for S=(A+A)^2; stays quadratic on [N]";
    cex.build = [](const RSet& a) {
      ExprPtr s = SetExpr::eltwise_pow(SetExpr::sum(SetExpr::var("A"), SetExpr::var("A")), 2);
      ExprPtr e = SetExpr::sum(s, s);
      e = SetExpr::sum(std::move(e), s);
      e = SetExpr::sum(std::move(e), s);
      e = SetExpr::diff(std::move(e), s);
      e = SetExpr::diff(std::move(e), s);
      e = SetExpr::diff(std::move(e), s);
      return std::make_pair(std::move(e), Bindings{{"A", a}});
    };
    v->push_back(std::move(cex));

    QuantityDef sprod;
    sprod.key = "shift-product";
    sprod.beta = 1.25;
    sprod.note = "A(A+1)";
    sprod.build = [](const RSet& a) {
      return std::make_pair(SetExpr::product(SetExpr::var("A"), shift_of("A", Rat(1))),
                            Bindings{{"A", a}});
    };
    v->push_back(std::move(sprod));
    return v;
  }();
  return *defs;
}

const QuantityDef& find_quantity(const std::string& key) {
  for (const auto& d : catalogue()) {
    if (d.key == key) return d;
  }
  throw PreconditionError("named-quantity", "unknown quantity '" + key + "'");
}

}  // namespace

std::vector<std::string> named_quantity_keys() {
  std::vector<std::string> keys;
  keys.reserve(catalogue().size());
  for (const auto& d : catalogue()) keys.push_back(d.key);
  return keys;
}

long long named_quantity_size(const std::string& key, const RSet& x,
                              const NamedExpanderOptions& opt) {
  const QuantityDef& def = find_quantity(key);
  auto [expr, bindings] = def.build(x);
  return static_cast<long long>(eval(expr, bindings, opt.eval).size());
}

std::vector<ExpanderRow> named_expanders(const RSet& x, const NamedExpanderOptions& opt) {
  std::vector<ExpanderRow> rows;
  for (const auto& def : catalogue()) {
    ExpanderRow row;
    row.key = def.key;
    row.beta = def.beta;
    row.note = def.note;
    try {
      auto [expr, bindings] = def.build(x);
      row.expr = expr_text(expr);
      long long best = static_cast<long long>(eval(expr, bindings, opt.eval).size());
      if (opt.exhaustive_pairs && def.build_pair && x.size() <= opt.exhaustive_limit) {
        for (std::size_t i = 0; i < x.size(); ++i) {
          for (std::size_t j = i + 1; j < x.size(); ++j) {
            auto [pe, pb] = def.build_pair(x, x[i], x[j]);
            const long long sz = static_cast<long long>(eval(pe, pb, opt.eval).size());
            if (sz > best) {
              best = sz;
              row.expr = expr_text(pe);
            }
          }
        }
        row.note += " (exhaustive pair scan)";
      }
      row.size = best;
      row.ratio =
          static_cast<double>(row.size) / std::pow(static_cast<double>(x.size()), row.beta);
    } catch (const SizeLimitError&) {
      row.aborted = true;
    } catch (const PreconditionError& e) {
      row.note = std::string("skipped: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sqlab

#include "sqlab/convexity.hpp"

#include <algorithm>
#include <sstream>

#include "sqlab/errors.hpp"

namespace sqlab {

namespace {

Poly pow_poly(int k) {
  std::vector<Rat> c(static_cast<std::size_t>(k) + 1, Rat(0));
  c.back() = Rat(1);
  return Poly(std::move(c));
}

/// Any point of a nonempty half-open domain.
Rat sample_point(const Domain& d) {
  if (d.lo && d.hi) return (*d.lo + *d.hi) / Rat(2);
  if (d.lo) return *d.lo + Rat(1);
  if (d.hi) return *d.hi;
  return Rat(0);
}

}  // namespace

ConvexMap ConvexMap::pow(int k) {
  if (k < 2) throw PreconditionError("pow-map", "monomial exponent must be >= 2");
  ConvexMap m;
  m.kind_ = Kind::Pow;
  m.poly_ = pow_poly(k);
  m.domain_ = Domain::greater_than(Rat(0));
  return m;
}

ConvexMap ConvexMap::cube_shift(const Rat& h) {
  ConvexMap m;
  m.kind_ = Kind::CubeShift;
  m.poly_ = pow_poly(3).shifted(h);  // (t + h)^3
  m.scalar_ = h;
  m.domain_ = Domain::greater_than(-h);
  return m;
}

ConvexMap ConvexMap::general_poly(Poly p, Domain dom) {
  ConvexMap m;
  m.kind_ = Kind::GeneralPoly;
  m.poly_ = std::move(p);
  m.domain_ = std::move(dom);
  return m;
}

ConvexMap ConvexMap::log_shift(const Rat& z) {
  if (!(Rat(0) < z)) throw PreconditionError("log-shift", "scalar must be positive");
  ConvexMap m;
  m.kind_ = Kind::LogShift;
  m.scalar_ = z;
  m.domain_ = Domain::all();
  return m;
}

const Poly& ConvexMap::as_poly() const {
  if (kind_ == Kind::LogShift) {
    throw PreconditionError("map-kind", "log-shift map has no polynomial form");
  }
  return poly_;
}

Rat ConvexMap::apply(const Rat& x) const {
  if (kind_ == Kind::LogShift) return scalar_ * x + Rat(1);
  return poly_.eval(x);
}

bool operator==(const ConvexMap& a, const ConvexMap& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == ConvexMap::Kind::LogShift) return a.scalar_ == b.scalar_;
  return a.poly_ == b.poly_;
}

namespace {

std::optional<Rat> parse_endpoint(std::string_view s) {
  if (s == "inf" || s == "+inf" || s == "oo") return std::nullopt;
  if (s == "-inf" || s == "-oo") return std::nullopt;
  return Rat::parse(s);
}

}  // namespace

ConvexMap ConvexMap::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("map spec needs 'kind:arg'", 0);
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view arg = spec.substr(colon + 1);
  if (kind == "pow") {
    Rat k = Rat::parse(arg);
    if (!k.is_integer() || !(Rat(2) <= k)) {
      throw ParseError("pow map needs an integer exponent >= 2", colon + 1);
    }
    return pow(static_cast<int>(k.num().get_si()));
  }
  if (kind == "cube-shift") return cube_shift(Rat::parse(arg));
  if (kind == "logshift") return log_shift(Rat::parse(arg));
  if (kind == "poly") {
    // poly:[c0,c1,...]@(lo,hi)
    if (arg.empty() || arg.front() != '[') throw ParseError("poly map needs [c0,c1,...]", colon + 1);
    const auto close = arg.find(']');
    if (close == std::string_view::npos) throw ParseError("unterminated coefficient list", colon + 1);
    std::vector<Rat> coeffs;
    std::string_view body = arg.substr(1, close - 1);
    while (!body.empty()) {
      const auto comma = body.find(',');
      coeffs.push_back(Rat::parse(body.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    Domain dom = Domain::all();
    std::string_view rest = arg.substr(close + 1);
    if (!rest.empty()) {
      if (rest.front() != '@' || rest.size() < 2 || rest[1] != '(' || rest.back() != ')') {
        throw ParseError("poly domain must look like @(lo,hi)", colon + 1 + close);
      }
      std::string_view inner = rest.substr(2, rest.size() - 3);
      const auto comma = inner.find(',');
      if (comma == std::string_view::npos) throw ParseError("domain needs two endpoints", 0);
      dom.lo = parse_endpoint(inner.substr(0, comma));
      dom.hi = parse_endpoint(inner.substr(comma + 1));
    }
    return general_poly(Poly(std::move(coeffs)), dom);
  }
  throw ParseError("unknown map kind '" + std::string(kind) + "'", 0);
}

std::string ConvexMap::str() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Pow:
      os << "pow:" << poly_.degree();
      break;
    case Kind::CubeShift:
      os << "cube-shift:" << scalar_.str();
      break;
    case Kind::LogShift:
      os << "logshift:" << scalar_.str();
      break;
    case Kind::GeneralPoly: {
      os << "poly:[";
      const auto& c = poly_.coeffs();
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        os << c[i].str();
      }
      os << "]@(" << (domain_.lo ? domain_.lo->str() : "-inf") << ","
         << (domain_.hi ? domain_.hi->str() : "inf") << ")";
      break;
    }
  }
  return os.str();
}

namespace {

/// Rejection for a derivative that should be strictly positive (or strictly
/// negative) but has a root in the domain.
ConvexityRejection reject_at_root(const Poly& deriv, const Domain& dom, int wanted_sign,
                                  const std::string& reason) {
  ConvexityRejection rej;
  rej.reason = reason;
  auto roots = isolate_roots(deriv, dom);
  if (!roots.empty()) {
    const IsolatedRoot& r = roots.front();
    rej.where = r;
    for (const Rat& cand : {r.hi, r.lo, (r.lo + r.hi) / Rat(2)}) {
      if (dom.contains(cand) && deriv.eval(cand).sign() * wanted_sign <= 0) {
        rej.witness = cand;
        break;
      }
    }
  }
  return rej;
}

}  // namespace

CertifyResult certify_convex(const ConvexMap& f, const Domain& dom) {
  if (f.is_log_shift()) {
    // f(t) = log(e^t + 1): f' = e^t/(e^t+1) in (0,1), f'' = e^t/(e^t+1)^2 > 0.
    return ConvexityCertificate{Curvature::Convex, dom, true};
  }
  const Poly& p = f.as_poly();
  const Poly d1 = p.derivative();
  const Poly d2 = d1.derivative();
  if (d1.is_zero()) {
    return ConvexityRejection{"first derivative identically zero", sample_point(dom), std::nullopt};
  }
  const Rat probe = sample_point(dom);
  if (count_roots(d1, dom) > 0) {
    return reject_at_root(d1, dom, 1, "first derivative has a zero in the domain");
  }
  if (d1.eval(probe).sign() < 0) {
    return ConvexityRejection{"map is decreasing on the domain", probe, std::nullopt};
  }
  if (d2.is_zero()) {
    return ConvexityRejection{"second derivative identically zero", probe, std::nullopt};
  }
  if (count_roots(d2, dom) > 0) {
    return reject_at_root(d2, dom, d2.eval(probe).sign() >= 0 ? 1 : -1,
                          "second derivative has a zero in the domain");
  }
  const Curvature dir = d2.eval(probe).sign() > 0 ? Curvature::Convex : Curvature::Concave;
  return ConvexityCertificate{dir, dom, false};
}

bool certified_convex_increasing(const ConvexMap& f, const Domain& dom) {
  auto res = certify_convex(f, dom);
  const auto* cert = std::get_if<ConvexityCertificate>(&res);
  return cert != nullptr && cert->direction == Curvature::Convex;
}

std::size_t ConvexityPartition::piece_index(const Rat& t) const {
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (pieces[i].interval.hi && t <= *pieces[i].interval.hi) return i;
  }
  return pieces.empty() ? 0 : pieces.size() - 1;
}

namespace {

/// First derivative of f(t + shift) in the curve parameter, as an exact
/// rational function. For the log-shift pair the coordinate map is
/// t -> log(z'*t+1) - log(z*t+1) with derivative (z'-z)/((z't+1)(zt+1)).
RatFunc coordinate_derivative(const ConvexMap& f, const Rat& lo_shift, const Rat& hi_shift) {
  if (f.is_log_shift()) {
    const Rat& z = lo_shift;
    const Rat& zp = hi_shift;
    Poly den = Poly({Rat(1), zp}) * Poly({Rat(1), z});
    return RatFunc{Poly::constant(zp - z), den}.reduced();
  }
  Poly g = f.as_poly().shifted(hi_shift) - f.as_poly().shifted(lo_shift);
  return RatFunc::of(g.derivative());
}

/// A rational sample inside (lo, hi) that avoids every interval in `skip`
/// (which is sorted and separated). Returns nullopt when the gap is empty.
std::optional<Rat> sample_avoiding(const std::optional<Rat>& lo, const std::optional<Rat>& hi,
                                   const std::vector<IsolatedRoot>& skip) {
  // candidate gaps: before the first interval, between intervals, after the last
  std::vector<std::pair<std::optional<Rat>, std::optional<Rat>>> gaps;
  std::optional<Rat> cursor = lo;
  for (const auto& r : skip) {
    gaps.emplace_back(cursor, r.lo);
    cursor = r.hi;
  }
  gaps.emplace_back(cursor, hi);
  for (const auto& [a, b] : gaps) {
    if (a && b) {
      if (*a < *b) return (*a + *b) / Rat(2);
    } else if (a) {
      return *a + Rat(1);
    } else if (b) {
      return *b - Rat(1);
    } else {
      return Rat(0);
    }
  }
  return std::nullopt;
}

}  // namespace

ConvexityPartition convexity_partition(const ConvexMap& f1, const ConvexMap& f2,
                                       const ShiftQuadruple& h, const Domain& dom) {
  if (!(Rat(0) < h.h1 && h.h1 < h.h1p && Rat(0) < h.h2 && h.h2 < h.h2p)) {
    throw PreconditionError("shift-order", "quadruple must satisfy 0 < h1 < h1' and 0 < h2 < h2'");
  }
  const bool log_pair = f1.is_log_shift() && f2.is_log_shift();
  if (f1.is_log_shift() != f2.is_log_shift()) {
    throw PreconditionError("map-kinds", "cannot mix log-shift and polynomial coordinate maps");
  }
  if (log_pair != (h.law == GroupLaw::Multiplicative)) {
    throw PreconditionError("map-kinds", "log-shift curves take a multiplicative quadruple");
  }
  // Both maps must be strictly increasing and strictly convex where the
  // shifted curve evaluates them.
  if (!log_pair) {
    Domain d1 = dom.lo ? Domain::greater_than(*dom.lo + h.h1) : Domain::all();
    Domain d2 = dom.lo ? Domain::greater_than(*dom.lo + h.h2) : Domain::all();
    if (!certified_convex_increasing(f1, d1) || !certified_convex_increasing(f2, d2)) {
      throw PreconditionError("convexity", "coordinate map not certified convex increasing");
    }
  }

  RatFunc xp = coordinate_derivative(f1, h.h1, h.h1p);
  RatFunc yp = coordinate_derivative(f2, h.h2, h.h2p);
  if (xp.is_zero()) throw PreconditionError("non-graph", "dx/dt identically zero");
  if (count_roots(xp.num, dom) > 0) {
    auto roots = isolate_roots(xp.num, dom);
    throw PreconditionError("non-graph",
                            "dx/dt vanishes inside " + roots.front().lo.str() + ".." +
                                roots.front().hi.str());
  }

  ConvexityPartition part;
  part.domain = dom;
  part.curvature = ((yp / xp).derivative() / xp).reduced();
  if (part.curvature.is_zero()) {
    throw PreconditionError("degenerate-curve", "d2y/dx2 identically zero on the domain");
  }
  if (count_roots(part.curvature.den, dom) > 0) {
    throw PreconditionError("curvature-pole", "denominator of d2y/dx2 vanishes in the domain");
  }

  SignChangeResult changes = count_sign_changes(part.curvature.num, dom);
  part.boundaries = changes.locations;

  // Sample the sign of the curvature strictly between sign changes, also
  // avoiding even-multiplicity zeros of the numerator.
  std::vector<IsolatedRoot> all_roots = isolate_roots(part.curvature.num, dom);
  const int den_sign = part.curvature.den.eval(sample_avoiding(dom.lo, dom.hi, all_roots)
                                                   .value_or(sample_point(dom)))
                           .sign();

  std::optional<Rat> left = dom.lo;
  for (std::size_t i = 0; i <= part.boundaries.size(); ++i) {
    std::optional<Rat> right = i < part.boundaries.size()
                                   ? std::optional<Rat>(part.boundaries[i].hi)
                                   : dom.hi;
    std::vector<IsolatedRoot> inside;
    for (const auto& r : all_roots) {
      const bool above = !left || *left < r.hi;
      const bool below = !right || !(*right < r.hi);
      if (above && below) inside.push_back(r);
    }
    auto s = sample_avoiding(left, right, inside);
    if (!s) throw Error("internal: empty partition piece");
    const int piece_sign = part.curvature.num.eval(*s).sign() * den_sign;
    part.pieces.push_back(
        {Domain{left, right}, piece_sign >= 0 ? Curvature::Convex : Curvature::Concave});
    left = right;
  }
  return part;
}

}  // namespace sqlab

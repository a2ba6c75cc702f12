#pragma once

#include <optional>
#include <string>

#include "sqlab/rat.hpp"

namespace sqlab {

/// Half-open interval (lo, hi] with finite rational endpoints. Half-open
/// is the interval convention used everywhere in this library.
struct HalfOpen {
  Rat lo, hi;

  bool contains(const Rat& x) const { return lo < x && x <= hi; }
  bool overlaps(const HalfOpen& o) const { return lo < o.hi && o.lo < hi; }
  std::string str() const { return "(" + lo.str() + ", " + hi.str() + "]"; }
};

/// Axis-aligned product of two half-open intervals.
struct Box {
  HalfOpen x, y;

  bool contains(const Rat& px, const Rat& py) const {
    return x.contains(px) && y.contains(py);
  }
  bool overlaps(const Box& o) const {
    return x.overlaps(o.x) && y.overlaps(o.y);
  }
};

/// Possibly unbounded half-open domain (lo, hi]; a missing endpoint means
/// -infinity / +infinity.
struct Domain {
  std::optional<Rat> lo, hi;

  static Domain all() { return {}; }
  static Domain greater_than(Rat l) { return {std::move(l), std::nullopt}; }
  static Domain interval(Rat l, Rat h) { return {std::move(l), std::move(h)}; }

  bool contains(const Rat& x) const {
    if (lo && !(*lo < x)) return false;
    if (hi && !(x <= *hi)) return false;
    return true;
  }
  std::string str() const {
    std::string a = lo ? lo->str() : "-inf";
    std::string b = hi ? hi->str() : "inf";
    return "(" + a + ", " + b + "]";
  }
};

}  // namespace sqlab

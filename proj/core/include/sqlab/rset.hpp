#pragma once

#include <functional>
#include <vector>

#include "sqlab/rat.hpp"

namespace sqlab {

/// Which group law a construction works in. Multiplicative variants operate
/// directly on products and ratios of rationals; logarithms are a proof
/// device only and never computed.
enum class GroupLaw { Additive, Multiplicative };

/// Evaluation knobs shared by every set-building operation.
struct EvalOptions {
  /// Abort with SizeLimitError when an intermediate set would grow past
  /// this many elements.
  long long max_set_size = 100'000'000;
  /// Worker threads for pair enumeration. Results are byte-identical for
  /// every value.
  int jobs = 1;
  enum class Strategy { Auto, HashAccumulate, SortedMerge } strategy = Strategy::Auto;
};

/// Canonical finite set of rationals: strictly increasing element vector.
class RSet {
 public:
  RSet() = default;
  /// Sorts and deduplicates.
  static RSet from_vector(std::vector<Rat> elems);
  /// Trusts the caller: input must already be strictly increasing.
  static RSet from_sorted_unique(std::vector<Rat> elems);
  static RSet singleton(Rat v) { return from_sorted_unique({std::move(v)}); }
  /// {1, 2, ..., n}
  static RSet integer_range(long long n);

  bool empty() const { return e_.empty(); }
  std::size_t size() const { return e_.size(); }
  const Rat& operator[](std::size_t i) const { return e_[i]; }
  const std::vector<Rat>& elements() const { return e_; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }
  const Rat& min() const { return e_.front(); }
  const Rat& max() const { return e_.back(); }

  bool contains(const Rat& v) const;
  bool contains_zero() const { return contains(Rat(0)); }
  bool all_positive() const { return !empty() && Rat(0) < min(); }

  friend bool operator==(const RSet& a, const RSet& b) { return a.e_ == b.e_; }

 private:
  std::vector<Rat> e_;
};

enum class PairOp { Add, Sub, Mul, Div };

/// {a op b : a in x, b in y}; exact, canonical, deterministic for every
/// jobs/strategy setting. Div requires 0 not in y.
RSet set_pairwise(const RSet& x, const RSet& y, PairOp op, const EvalOptions& opt = {});

inline RSet set_add(const RSet& x, const RSet& y, const EvalOptions& o = {}) {
  return set_pairwise(x, y, PairOp::Add, o);
}
inline RSet set_sub(const RSet& x, const RSet& y, const EvalOptions& o = {}) {
  return set_pairwise(x, y, PairOp::Sub, o);
}
inline RSet set_mul(const RSet& x, const RSet& y, const EvalOptions& o = {}) {
  return set_pairwise(x, y, PairOp::Mul, o);
}
inline RSet set_div(const RSet& x, const RSet& y, const EvalOptions& o = {}) {
  return set_pairwise(x, y, PairOp::Div, o);
}

RSet set_union(const RSet& x, const RSet& y, const EvalOptions& opt = {});
RSet set_intersect(const RSet& x, const RSet& y);
/// {x + c}
RSet set_shift(const RSet& x, const Rat& c);
/// {c * x}; c == 0 collapses a nonempty set to {0}.
RSet set_dilate(const RSet& x, const Rat& c);
inline RSet set_negate(const RSet& x) { return set_dilate(x, Rat(-1)); }
/// k-fold product set with repetition among the factors, k >= 1.
RSet set_kfold_product(const RSet& x, int k, const EvalOptions& opt = {});
/// k-fold iterated sumset (Additive) or product set (Multiplicative);
/// k == 0 yields the group identity singleton.
RSet set_iterate(const RSet& x, int k, GroupLaw law, const EvalOptions& opt = {});
/// Elementwise image under an exact map; result re-sorted and deduplicated.
RSet set_map(const RSet& x, const std::function<Rat(const Rat&)>& f);
/// Elements of x at even 1-based positions (the 2nd, 4th, ... smallest).
RSet every_second_element(const RSet& x);

/// Multiplicative energy: number of quadruples (x1, y1, x2, y2) with
/// x1*y1 == x2*y2, computed as sum of squared product multiplicities.
long long mult_energy(const RSet& x, const RSet& y);

}  // namespace sqlab

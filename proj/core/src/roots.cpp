#include <algorithm>
#include <deque>
#include <utility>
#include <vector>

#include "sqlab/errors.hpp"
#include "sqlab/poly.hpp"

// Exact real-root counting and isolation via Sturm sequences. Everything
// here works in integer/rational arithmetic only; no floating point.

namespace sqlab {

namespace {

struct SturmChain {
  std::vector<Poly> seq;

  static SturmChain build(const Poly& p) {
    SturmChain s;
    s.seq.push_back(p);
    Poly d = p.derivative();
    if (!d.is_zero()) s.seq.push_back(d.monic());
    while (s.seq.size() >= 2) {
      const Poly& a = s.seq[s.seq.size() - 2];
      const Poly& b = s.seq.back();
      Poly r = a.divmod(b).second;
      if (r.is_zero()) break;
      s.seq.push_back((-r).monic());
    }
    return s;
  }

  static int variations(const std::vector<int>& signs) {
    int v = 0;
    int prev = 0;
    for (int s : signs) {
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  }

  int at(const Rat& x) const {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const Poly& q : seq) signs.push_back(q.sign_at(x));
    return variations(signs);
  }

  int at_pos_inf() const {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const Poly& q : seq) signs.push_back(q.sign_at_pos_inf());
    return variations(signs);
  }

  int at_neg_inf() const {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const Poly& q : seq) signs.push_back(q.sign_at_neg_inf());
    return variations(signs);
  }
};

// Divides out every factor (t - a); returns the deflated polynomial.
Poly deflate_at(Poly p, const Rat& a) {
  while (!p.is_zero() && p.degree() >= 1 && p.eval(a).is_zero()) {
    p = p.divmod(Poly::linear_root(a)).first;
  }
  return p;
}

// A probe point in (a, b) where q does not vanish. q squarefree with
// deg q >= 1; q has at most deg q roots so one of deg q + 1 candidates
// works.
Rat non_root_probe(const Poly& q, const Rat& a, const Rat& b) {
  const int d = std::max(q.degree(), 1);
  const Rat width = b - a;
  Rat half = a + width / Rat(2);
  if (!q.eval(half).is_zero()) return half;
  for (int k = 1; k <= d + 1; ++k) {
    Rat m = a + width * Rat(k, d + 2);
    if (!q.eval(m).is_zero()) return m;
  }
  throw Error("internal: no probe point found");  // unreachable
}

struct Clamped {
  Rat left, right;   // analysis runs on (left, right]
  bool empty = false;
};

// Clamps a possibly unbounded domain to finite endpoints outside the root
// bound of q.
Clamped clamp(const Poly& q, const Domain& dom) {
  const Rat bound = q.root_bound() + Rat(1);
  Clamped c{dom.lo ? *dom.lo : -bound, dom.hi ? *dom.hi : bound};
  if (!(c.left < c.right)) c.empty = true;
  return c;
}

}  // namespace

long long count_roots(const Poly& p, const Domain& dom) {
  if (p.is_zero()) {
    throw PreconditionError("zero-polynomial", "root counting needs a nonzero polynomial");
  }
  Poly q = p.squarefree_part();
  if (q.degree() <= 0) return 0;
  Clamped c = clamp(q, dom);
  if (c.empty) return 0;
  long long extra = 0;
  if (dom.hi && q.eval(c.right).is_zero()) {
    extra = 1;  // (lo, hi] includes a root at hi
    q = deflate_at(std::move(q), c.right);
  }
  if (dom.lo) q = deflate_at(std::move(q), c.left);  // root at lo is excluded
  if (q.degree() <= 0) return extra;
  SturmChain chain = SturmChain::build(q);
  const int va = dom.lo ? chain.at(c.left) : chain.at_neg_inf();
  const int vb = dom.hi ? chain.at(c.right) : chain.at_pos_inf();
  return extra + (va - vb);
}

std::vector<IsolatedRoot> isolate_roots(const Poly& p, const Domain& dom) {
  if (p.is_zero()) {
    throw PreconditionError("zero-polynomial", "root isolation needs a nonzero polynomial");
  }
  Poly q = p.squarefree_part();
  if (q.degree() <= 0) return {};
  Clamped c = clamp(q, dom);
  if (c.empty) return {};

  // A rational root sitting exactly at a finite right endpoint belongs to
  // (lo, hi]; it is deflated out and re-attached after the bisection.
  bool root_at_hi = false;
  if (dom.hi && q.eval(c.right).is_zero()) {
    root_at_hi = true;
    q = deflate_at(std::move(q), c.right);
  }
  if (dom.lo) q = deflate_at(std::move(q), c.left);  // root at lo is excluded

  std::vector<IsolatedRoot> out;
  if (q.degree() >= 1) {
    SturmChain chain = SturmChain::build(q);
    struct Piece {
      Rat a, b;
      int va, vb;
    };
    std::deque<Piece> work;
    work.push_back({c.left, c.right, chain.at(c.left), chain.at(c.right)});
    while (!work.empty()) {
      Piece w = work.front();
      work.pop_front();
      const int n = w.va - w.vb;
      if (n <= 0) continue;
      if (n == 1) {
        out.push_back({w.a, w.b, false});
        continue;
      }
      Rat m = non_root_probe(q, w.a, w.b);
      const int vm = chain.at(m);
      work.push_back({w.a, m, w.va, vm});
      work.push_back({m, w.b, vm, w.vb});
    }
    std::sort(out.begin(), out.end(),
              [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.lo < y.lo; });

    // One refinement step: shrink the interval around its single root.
    auto refine = [&chain, &q](IsolatedRoot& r) {
      Rat m = non_root_probe(q, r.lo, r.hi);
      if (chain.at(r.lo) - chain.at(m) == 1) {
        r.hi = m;
      } else {
        r.lo = m;
      }
    };
    // Separate neighbours so that a sample point exists strictly between
    // consecutive roots: enforce out[i].hi < out[i+1].lo.
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      while (!(out[i].hi < out[i + 1].lo)) {
        if ((out[i].hi - out[i].lo) < (out[i + 1].hi - out[i + 1].lo)) {
          refine(out[i + 1]);
        } else {
          refine(out[i]);
        }
      }
    }
    if (root_at_hi) {
      while (!out.empty() && !(out.back().hi < c.right)) refine(out.back());
    }
  }
  if (root_at_hi) {
    const Rat& below = out.empty() ? c.left : out.back().hi;
    out.push_back({(below + c.right) / Rat(2), c.right, true});
  }
  return out;
}

SignChangeResult count_sign_changes(const Poly& p, const Domain& dom) {
  if (p.is_zero()) {
    throw PreconditionError("zero-polynomial",
                            "sign-change analysis needs a polynomial that is not identically zero");
  }
  SignChangeResult res;
  Poly odd = p.odd_multiplicity_part();
  if (odd.degree() <= 0) return res;
  res.locations = isolate_roots(odd, dom);
  res.count = static_cast<long long>(res.locations.size());
  return res;
}

}  // namespace sqlab

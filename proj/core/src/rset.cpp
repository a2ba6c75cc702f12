#include "sqlab/rset.hpp"

#include <algorithm>
#include <queue>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "sqlab/errors.hpp"

namespace sqlab {

RSet RSet::from_vector(std::vector<Rat> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  RSet s;
  s.e_ = std::move(elems);
  return s;
}

RSet RSet::from_sorted_unique(std::vector<Rat> elems) {
  RSet s;
  s.e_ = std::move(elems);
  return s;
}

RSet RSet::integer_range(long long n) {
  std::vector<Rat> v;
  v.reserve(static_cast<std::size_t>(std::max<long long>(n, 0)));
  for (long long i = 1; i <= n; ++i) v.emplace_back(i);
  return from_sorted_unique(std::move(v));
}

bool RSet::contains(const Rat& v) const {
  return std::binary_search(e_.begin(), e_.end(), v);
}

namespace {

Rat combine(const Rat& a, const Rat& b, PairOp op) {
  switch (op) {
    case PairOp::Add: return a + b;
    case PairOp::Sub: return a - b;
    case PairOp::Mul: return a * b;
    case PairOp::Div: return a / b;
  }
  throw Error("unreachable");
}

using RatHashSet = std::unordered_set<Rat, RatHash>;

void accumulate_rows(const RSet& x, const RSet& y, PairOp op, std::size_t row_begin,
                     std::size_t row_end, long long cap, RatHashSet& out) {
  for (std::size_t i = row_begin; i < row_end; ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      out.insert(combine(x[i], y[j], op));
      if (static_cast<long long>(out.size()) > cap) throw SizeLimitError(cap);
    }
  }
}

RSet hash_accumulate(const RSet& x, const RSet& y, PairOp op, const EvalOptions& opt) {
  const long long cap = opt.max_set_size;
  const std::size_t pairs = x.size() * y.size();
  int jobs = std::max(opt.jobs, 1);
  if (pairs < (1u << 15)) jobs = 1;
  RatHashSet merged;
  if (jobs == 1) {
    accumulate_rows(x, y, op, 0, x.size(), cap, merged);
  } else {
    std::vector<RatHashSet> parts(static_cast<std::size_t>(jobs));
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    const std::size_t chunk = (x.size() + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
      threads.emplace_back([&, t] {
        try {
          const std::size_t b = std::min(x.size(), static_cast<std::size_t>(t) * chunk);
          const std::size_t e = std::min(x.size(), b + chunk);
          accumulate_rows(x, y, op, b, e, cap, parts[static_cast<std::size_t>(t)]);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : threads) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (auto& part : parts) {
      for (auto& v : part) {
        merged.insert(std::move(v));
        if (static_cast<long long>(merged.size()) > cap) throw SizeLimitError(cap);
      }
    }
  }
  std::vector<Rat> out(merged.begin(), merged.end());
  std::sort(out.begin(), out.end());
  return RSet::from_sorted_unique(std::move(out));
}

// K-way merge over the sorted streams {x[i] op b : i} for b in y. Only for
// Add/Sub, where each stream is monotone in x.
RSet sorted_merge(const RSet& x, const RSet& y, PairOp op, const EvalOptions& opt) {
  struct Head {
    Rat value;
    std::size_t xi, yj;
  };
  auto cmp = [](const Head& a, const Head& b) { return b.value < a.value; };
  std::priority_queue<Head, std::vector<Head>, decltype(cmp)> heap(cmp);
  for (std::size_t j = 0; j < y.size(); ++j) {
    heap.push({combine(x[0], y[j], op), 0, j});
  }
  std::vector<Rat> out;
  while (!heap.empty()) {
    Head h = heap.top();
    heap.pop();
    if (out.empty() || out.back() < h.value) {
      out.push_back(h.value);
      if (static_cast<long long>(out.size()) > opt.max_set_size) {
        throw SizeLimitError(opt.max_set_size);
      }
    }
    if (h.xi + 1 < x.size()) {
      heap.push({combine(x[h.xi + 1], y[h.yj], op), h.xi + 1, h.yj});
    }
  }
  return RSet::from_sorted_unique(std::move(out));
}

}  // namespace

RSet set_pairwise(const RSet& x, const RSet& y, PairOp op, const EvalOptions& opt) {
  if (op == PairOp::Div && y.contains_zero()) {
    throw DivisionByZeroError("zero element in divisor set");
  }
  if (x.empty() || y.empty()) return {};
  if (opt.strategy == EvalOptions::Strategy::SortedMerge &&
      (op == PairOp::Add || op == PairOp::Sub)) {
    return sorted_merge(x, y, op, opt);
  }
  return hash_accumulate(x, y, op, opt);
}

RSet set_union(const RSet& x, const RSet& y, const EvalOptions& opt) {
  std::vector<Rat> out;
  out.reserve(x.size() + y.size());
  std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (static_cast<long long>(out.size()) > opt.max_set_size) {
    throw SizeLimitError(opt.max_set_size);
  }
  return RSet::from_sorted_unique(std::move(out));
}

RSet set_intersect(const RSet& x, const RSet& y) {
  std::vector<Rat> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return RSet::from_sorted_unique(std::move(out));
}

RSet set_shift(const RSet& x, const Rat& c) {
  std::vector<Rat> out;
  out.reserve(x.size());
  for (const Rat& v : x) out.push_back(v + c);
  return RSet::from_sorted_unique(std::move(out));
}

RSet set_dilate(const RSet& x, const Rat& c) {
  if (x.empty()) return {};
  if (c.is_zero()) return RSet::singleton(Rat(0));
  std::vector<Rat> out;
  out.reserve(x.size());
  for (const Rat& v : x) out.push_back(v * c);
  if (c.sign() < 0) std::reverse(out.begin(), out.end());
  return RSet::from_sorted_unique(std::move(out));
}

RSet set_kfold_product(const RSet& x, int k, const EvalOptions& opt) {
  if (k < 1) throw PreconditionError("k-fold", "exponent must be a positive integer");
  if (k == 1 || x.empty()) return x;
  // Repetition among factors is allowed, so A^(k) = A^(i) * A^(k-i).
  RSet half = set_kfold_product(x, k / 2, opt);
  RSet even = set_mul(half, half, opt);
  return k % 2 == 0 ? even : set_mul(even, x, opt);
}

RSet set_iterate(const RSet& x, int k, GroupLaw law, const EvalOptions& opt) {
  if (k < 0) throw PreconditionError("iterate", "negative repeat count");
  if (k == 0) return RSet::singleton(law == GroupLaw::Additive ? Rat(0) : Rat(1));
  RSet acc = x;
  for (int i = 1; i < k; ++i) {
    acc = law == GroupLaw::Additive ? set_add(acc, x, opt) : set_mul(acc, x, opt);
  }
  return acc;
}

RSet set_map(const RSet& x, const std::function<Rat(const Rat&)>& f) {
  std::vector<Rat> out;
  out.reserve(x.size());
  for (const Rat& v : x) out.push_back(f(v));
  return RSet::from_vector(std::move(out));
}

RSet every_second_element(const RSet& x) {
  std::vector<Rat> out;
  out.reserve(x.size() / 2);
  for (std::size_t i = 1; i < x.size(); i += 2) out.push_back(x[i]);
  return RSet::from_sorted_unique(std::move(out));
}

long long mult_energy(const RSet& x, const RSet& y) {
  std::unordered_map<Rat, long long, RatHash> counts;
  counts.reserve(std::min<std::size_t>(x.size() * y.size(), 1u << 20));
  for (const Rat& a : x) {
    for (const Rat& b : y) ++counts[a * b];
  }
  long long e = 0;
  for (const auto& [_, r] : counts) e += r * r;
  return e;
}

}  // namespace sqlab

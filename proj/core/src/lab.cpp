#include "sqlab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "sqlab/errors.hpp"
#include "sqlab/rng.hpp"

namespace sqlab {

Family Family::interval(long long n) {
  Family f;
  f.kind = Kind::Interval;
  f.n = n;
  return f;
}

Family Family::geometric(long long n, Rat base) {
  Family f;
  f.kind = Kind::Geometric;
  f.n = n;
  f.base = std::move(base);
  return f;
}

Family Family::squares(long long n) {
  Family f;
  f.kind = Kind::Squares;
  f.n = n;
  return f;
}

Family Family::random_ints(long long n, long long universe, std::uint64_t seed) {
  Family f;
  f.kind = Kind::RandomInts;
  f.n = n;
  f.universe = universe;
  f.seed = seed;
  return f;
}

Family Family::random_rats(long long n, long long universe, std::uint64_t seed) {
  Family f;
  f.kind = Kind::RandomRats;
  f.n = n;
  f.universe = universe;
  f.seed = seed;
  return f;
}

Family Family::convex_seq(long long n, ConvexMap map) {
  Family f;
  f.kind = Kind::ConvexSeq;
  f.n = n;
  f.map = std::move(map);
  return f;
}

Family Family::grid(long long n) {
  Family f;
  f.kind = Kind::Grid;
  f.n = n;
  return f;
}

Family Family::lines_config(std::vector<Rat> slopes, long long points_per_line, bool with_axis) {
  Family f;
  f.kind = Kind::LinesConfig;
  f.n = static_cast<long long>(slopes.size());
  f.slopes = std::move(slopes);
  f.points_per_line = points_per_line;
  f.with_axis = with_axis;
  return f;
}

std::string Family::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Interval: os << "interval n=" << n; break;
    case Kind::Geometric: os << "geometric base=" << base.str() << " n=" << n; break;
    case Kind::Squares: os << "squares n=" << n; break;
    case Kind::RandomInts: os << "random-ints n=" << n << " U=" << universe << " seed=" << seed; break;
    case Kind::RandomRats: os << "random-rats n=" << n << " U=" << universe << " seed=" << seed; break;
    case Kind::ConvexSeq: os << "convex-seq map=" << (map ? map->str() : "?") << " n=" << n; break;
    case Kind::Grid: os << "grid n=" << n; break;
    case Kind::LinesConfig:
      os << "lines-config slopes=" << slopes.size() << " k=" << points_per_line
         << (with_axis ? " +axis" : "");
      break;
  }
  return os.str();
}

RSet generate_set(const Family& f) {
  if (f.yields_points()) {
    throw PreconditionError("family-kind", "this family generates a point set");
  }
  if (f.n < 1) throw PreconditionError("parameters", "n must be >= 1");
  switch (f.kind) {
    case Family::Kind::Interval:
      return RSet::integer_range(f.n);
    case Family::Kind::Geometric: {
      if (!(Rat(1) < f.base)) throw PreconditionError("parameters", "base must be > 1");
      std::vector<Rat> v;
      Rat p(1);
      for (long long i = 0; i < f.n; ++i) {
        p *= f.base;
        v.push_back(p);
      }
      return RSet::from_vector(std::move(v));
    }
    case Family::Kind::Squares: {
      std::vector<Rat> v;
      for (long long i = 1; i <= f.n; ++i) v.emplace_back(i * i);
      return RSet::from_sorted_unique(std::move(v));
    }
    case Family::Kind::RandomInts: {
      if (f.universe < f.n) throw PreconditionError("parameters", "universe smaller than n");
      Rng rng = Rng::substream(f.seed, "family-random-ints");
      std::set<long long> chosen;
      while (static_cast<long long>(chosen.size()) < f.n) {
        chosen.insert(rng.uniform(1, f.universe));
      }
      std::vector<Rat> v;
      for (long long x : chosen) v.emplace_back(x);
      return RSet::from_sorted_unique(std::move(v));
    }
    case Family::Kind::RandomRats: {
      Rng rng = Rng::substream(f.seed, "family-random-rats");
      std::set<Rat> chosen;
      while (static_cast<long long>(chosen.size()) < f.n) {
        chosen.insert(rng.positive_rat(f.universe, 64));
      }
      return RSet::from_vector({chosen.begin(), chosen.end()});
    }
    case Family::Kind::ConvexSeq: {
      if (!f.map) throw PreconditionError("parameters", "convex-seq needs a map");
      std::vector<Rat> v;
      for (long long i = 1; i <= f.n; ++i) v.push_back(f.map->apply(Rat(i)));
      return RSet::from_vector(std::move(v));
    }
    default:
      throw PreconditionError("family-kind", "unhandled set family");
  }
}

PointSet generate_points(const Family& f) {
  switch (f.kind) {
    case Family::Kind::Grid: {
      if (f.n < 1) throw PreconditionError("parameters", "n must be >= 1");
      std::vector<Point> pts;
      pts.reserve(static_cast<std::size_t>(f.n * f.n));
      for (long long x = 1; x <= f.n; ++x) {
        for (long long y = 1; y <= f.n; ++y) pts.push_back({Rat(x), Rat(y)});
      }
      return PointSet::from_vector(std::move(pts));
    }
    case Family::Kind::LinesConfig: {
      if (f.points_per_line < 1) throw PreconditionError("parameters", "need points per line");
      std::vector<Rat> slopes = f.slopes;
      if (slopes.empty()) {
        for (long long s = 1; s <= f.n; ++s) slopes.emplace_back(s);
      }
      std::vector<Point> pts;
      for (const Rat& s : slopes) {
        for (long long x = 1; x <= f.points_per_line; ++x) {
          pts.push_back({Rat(x), s * Rat(x)});
        }
      }
      if (f.with_axis) {
        for (long long x = 1; x <= f.points_per_line; ++x) pts.push_back({Rat(x), Rat(0)});
      }
      return PointSet::from_vector(std::move(pts));
    }
    default:
      throw PreconditionError("family-kind", "this family generates a scalar set");
  }
}

void fit_loglog(GrowthReport& report) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long long k = 0;
  for (const SweepRow& r : report.rows) {
    if (r.aborted || r.size <= 0 || r.n <= 1) continue;
    const double x = std::log2(static_cast<double>(r.n));
    const double y = std::log2(static_cast<double>(r.size));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  report.fitted_rows = k;
  if (k < 2) {
    report.exponent = 0.0;
    report.intercept = 0.0;
    report.max_residual = 0.0;
    return;
  }
  const double n = static_cast<double>(k);
  const double denom = n * sxx - sx * sx;
  report.exponent = (n * sxy - sx * sy) / denom;
  report.intercept = (sy - report.exponent * sx) / n;
  double max_res = 0.0;
  for (const SweepRow& r : report.rows) {
    if (r.aborted || r.size <= 0 || r.n <= 1) continue;
    const double x = std::log2(static_cast<double>(r.n));
    const double y = std::log2(static_cast<double>(r.size));
    max_res = std::max(max_res, std::abs(y - (report.exponent * x + report.intercept)));
  }
  report.max_residual = max_res;
}

GrowthReport sweep(const std::string& quantity_label, const QuantityFn& quantity,
                   Family family_template, const std::vector<long long>& ns) {
  GrowthReport report;
  report.quantity = quantity_label;
  Family f = std::move(family_template);
  report.family = f.str();
  for (long long n : ns) {
    f.n = n;
    SweepRow row;
    row.n = n;
    try {
      row.size = quantity(generate_set(f));
    } catch (const SizeLimitError&) {
      row.aborted = true;
    }
    report.rows.push_back(row);
  }
  fit_loglog(report);
  return report;
}

std::vector<long long> n_range(long long lo, long long hi, long long step) {
  if (step < 1) throw PreconditionError("parameters", "step must be >= 1");
  std::vector<long long> out;
  for (long long n = lo; n <= hi; n += step) out.push_back(n);
  return out;
}

SearchResult extremal_search(const ExprPtr& expr, const std::string& var_name, long long n,
                             long long universe, const AnnealSchedule& schedule,
                             std::uint64_t seed, const EvalOptions& opt) {
  if (n < 2) throw PreconditionError("parameters", "need n >= 2");
  if (universe < n) throw PreconditionError("parameters", "infeasible: universe smaller than n");

  Rng rng = Rng::substream(seed, "extremal-search");
  std::set<long long> current;
  while (static_cast<long long>(current.size()) < n) {
    current.insert(rng.uniform(1, universe));
  }

  const double log_n = std::log(static_cast<double>(n));
  auto objective = [&](const std::set<long long>& s) {
    std::vector<Rat> v;
    v.reserve(s.size());
    for (long long x : s) v.emplace_back(x);
    const RSet rs = RSet::from_sorted_unique(std::move(v));
    const auto size = eval(expr, {{var_name, rs}}, opt).size();
    return std::log(static_cast<double>(size)) / log_n;
  };

  SearchResult res;
  double cur = objective(current);
  res.evaluations = 1;
  std::set<long long> best_set = current;
  double best = cur;
  res.trace.push_back({0, best});

  double temperature = schedule.t0;
  for (long long it = 1; it <= schedule.iterations; ++it) {
    if (universe > n) {
      // replace one element with a fresh one
      const long long victim_idx = rng.uniform(0, n - 1);
      auto victim_it = current.begin();
      std::advance(victim_it, victim_idx);
      const long long victim = *victim_it;
      long long incoming = rng.uniform(1, universe);
      while (current.count(incoming) != 0) incoming = rng.uniform(1, universe);

      current.erase(victim);
      current.insert(incoming);
      const double cand = objective(current);
      ++res.evaluations;
      const double delta = cand - cur;
      if (delta <= 0 || rng.uniform01() < std::exp(-delta / temperature)) {
        cur = cand;
        if (cur < best) {
          best = cur;
          best_set = current;
          res.trace.push_back({it, best});
        }
      } else {
        current.erase(incoming);
        current.insert(victim);
      }
    }
    if (it % schedule.steps_per_temp == 0) temperature *= schedule.cooling;
  }

  std::vector<Rat> v;
  for (long long x : best_set) v.emplace_back(x);
  res.best_set = RSet::from_sorted_unique(std::move(v));
  res.best_objective = best;
  return res;
}

}  // namespace sqlab

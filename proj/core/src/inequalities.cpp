#include "sqlab/inequalities.hpp"

#include <cmath>
#include <sstream>

#include "sqlab/errors.hpp"

namespace sqlab {

namespace {

Rat int_pow(long long base, int e) {
  mpz_class b(static_cast<long>(base)), out(1);
  for (int i = 0; i < e; ++i) out *= b;
  return Rat(out, mpz_class(1));
}

RSet law_add(const RSet& a, const RSet& b, GroupLaw law, const EvalOptions& opt) {
  return law == GroupLaw::Additive ? set_add(a, b, opt) : set_mul(a, b, opt);
}

RSet law_sub(const RSet& a, const RSet& b, GroupLaw law, const EvalOptions& opt) {
  return law == GroupLaw::Additive ? set_sub(a, b, opt) : set_div(a, b, opt);
}

}  // namespace

std::string operands_hash(const std::vector<const RSet*>& sets) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix_byte = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (const RSet* s : sets) {
    mix_byte(';');
    for (const Rat& v : *s) {
      for (char c : v.str()) mix_byte(static_cast<unsigned char>(c));
      mix_byte(',');
    }
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

IneqInstance check_plunnecke(const RSet& x, int k, int l, GroupLaw law, const EvalOptions& opt) {
  if (k < 0 || l < 0 || k + l < 1) {
    throw PreconditionError("parameters", "need k, l >= 0 and k + l >= 1");
  }
  if (x.empty()) throw PreconditionError("input-size", "empty set");
  if (law == GroupLaw::Multiplicative && x.contains_zero()) {
    throw PreconditionError("positivity", "multiplicative form excludes 0");
  }
  IneqInstance inst;
  inst.name = law == GroupLaw::Additive ? "plunnecke" : "plunnecke-mult";
  inst.detail = "k=" + std::to_string(k) + " l=" + std::to_string(l);
  inst.operands_hash = operands_hash({&x});
  RSet kx = set_iterate(x, k, law, opt);
  RSet lx = set_iterate(x, l, law, opt);
  inst.lhs = static_cast<long long>(law_sub(kx, lx, law, opt).size());
  const long long doubling = static_cast<long long>(law_add(x, x, law, opt).size());
  inst.rhs = int_pow(doubling, k + l) / int_pow(static_cast<long long>(x.size()), k + l - 1);
  inst.holds = Rat(inst.lhs) <= inst.rhs;
  return inst;
}

IneqInstance check_ruzsa_triangle(const RSet& x, const RSet& y, const RSet& z, RuzsaVariant v,
                                  GroupLaw law, const EvalOptions& opt) {
  if (x.empty()) throw PreconditionError("input-size", "X must be nonempty");
  if (law == GroupLaw::Multiplicative &&
      (x.contains_zero() || y.contains_zero() || z.contains_zero())) {
    throw PreconditionError("positivity", "multiplicative form excludes 0");
  }
  IneqInstance inst;
  inst.name = v == RuzsaVariant::Difference ? "ruzsa-triangle" : "ruzsa-triangle-sum";
  inst.operands_hash = operands_hash({&x, &y, &z});
  inst.lhs = static_cast<long long>(law_sub(y, z, law, opt).size());
  long long xy = 0, xz = 0;
  if (v == RuzsaVariant::Difference) {
    xy = static_cast<long long>(law_sub(x, y, law, opt).size());
    xz = static_cast<long long>(law_sub(x, z, law, opt).size());
  } else {
    xy = static_cast<long long>(law_add(x, y, law, opt).size());
    xz = static_cast<long long>(law_add(x, z, law, opt).size());
  }
  inst.rhs = Rat(xy) * Rat(xz) / Rat(static_cast<long long>(x.size()));
  inst.holds = Rat(inst.lhs) <= inst.rhs;
  return inst;
}

IneqInstance check_garaev_sum(const std::vector<RSet>& xs, const RSet& y, GroupLaw law,
                              const EvalOptions& opt) {
  if (xs.empty()) throw PreconditionError("parameters", "need at least one summand");
  if (y.empty()) throw PreconditionError("input-size", "Y must be nonempty");
  IneqInstance inst;
  inst.name = law == GroupLaw::Additive ? "garaev-sum" : "garaev-sum-mult";
  inst.detail = "k=" + std::to_string(xs.size());
  std::vector<const RSet*> ops;
  for (const RSet& s : xs) ops.push_back(&s);
  ops.push_back(&y);
  inst.operands_hash = operands_hash(ops);

  RSet total = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) total = law_add(total, xs[i], law, opt);
  inst.lhs = static_cast<long long>(total.size());
  Rat rhs(1);
  for (const RSet& s : xs) {
    rhs *= Rat(static_cast<long long>(law_add(s, y, law, opt).size()));
  }
  rhs /= int_pow(static_cast<long long>(y.size()), static_cast<int>(xs.size()) - 1);
  inst.rhs = rhs;
  inst.holds = Rat(inst.lhs) <= inst.rhs;
  return inst;
}

ShiftProductProbe shift_product_probe(const RSet& a, const Rat& lambda, const EvalOptions& opt) {
  if (lambda.is_zero()) throw PreconditionError("parameters", "lambda must be nonzero");
  ShiftProductProbe probe;
  probe.lambda = lambda;
  probe.size = static_cast<long long>(set_mul(a, set_shift(a, lambda), opt).size());
  probe.ratio_to_5_4 =
      static_cast<double>(probe.size) / std::pow(static_cast<double>(a.size()), 1.25);
  return probe;
}

EnergyPairResult best_energy_pair(const RSet& a, const EvalOptions& opt) {
  if (a.size() < 2) throw PreconditionError("input-size", "need at least 2 elements");
  std::vector<Rat> nonzero;
  for (const Rat& v : a) {
    if (!v.is_zero()) nonzero.push_back(v);
  }
  if (nonzero.empty()) throw PreconditionError("positivity", "no nonzero elements");

  EnergyPairResult best;
  bool have = false;
  for (const Rat& u : nonzero) {
    RSet ua1 = set_shift(set_dilate(a, u), Rat(1));
    for (const Rat& v : nonzero) {
      RSet va1 = set_shift(set_dilate(a, v), Rat(1));
      const long long e = mult_energy(ua1, va1);
      if (!have || e < best.energy) {
        have = true;
        best.a = u;
        best.a_prime = v;
        best.energy = e;
        best.lower_bound = Rat(static_cast<long long>(ua1.size())) *
                           Rat(static_cast<long long>(ua1.size())) *
                           Rat(static_cast<long long>(va1.size())) *
                           Rat(static_cast<long long>(va1.size())) / Rat(e);
        best.product_size = static_cast<long long>(set_mul(ua1, va1, opt).size());
      }
    }
  }
  best.bound_holds = best.lower_bound <= Rat(best.product_size);
  return best;
}

}  // namespace sqlab

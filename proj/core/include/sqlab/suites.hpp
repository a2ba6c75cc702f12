#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqlab/inequalities.hpp"
#include "sqlab/rset.hpp"

namespace sqlab {

/// Randomized exact-instance suites. Each checked statement is a theorem;
/// a violation is a build-failing set-arithmetic bug, not a finding.
struct SuiteOptions {
  long long trials = 1000;
  std::uint64_t seed = 0;
  EvalOptions eval;
};

struct SuiteOutcome {
  std::string name;
  long long trials = 0;
  long long violations = 0;
  std::vector<IneqInstance> rows;
};

SuiteOutcome run_plunnecke_suite(const SuiteOptions& opt);
SuiteOutcome run_ruzsa_suite(const SuiteOptions& opt);       // both variants
SuiteOutcome run_garaev_sum_suite(const SuiteOptions& opt);
/// |b_max B + d_min B| == |B|^2 on random positive integer sets.
SuiteOutcome run_garaev_equality_suite(const SuiteOptions& opt);
/// Cauchy-Schwarz energy bound never exceeds the exact product-set size.
SuiteOutcome run_energy_bound_suite(const SuiteOptions& opt);

/// All suites by name: plunnecke | ruzsa | garaev-sum | garaev-eq | energy.
SuiteOutcome run_suite(const std::string& name, const SuiteOptions& opt);
std::vector<std::string> suite_names();

}  // namespace sqlab

#pragma once

#include <utility>

#include "tpcsp/instance.hpp"

namespace tpcsp {

struct SolverLimits {
  int max_brute_n = 10;
  int max_dp_n = 24;
  int threads = 1;  // brute force may fan out over the first placed variable
};

// Exact maximum deviation by enumerating all n! orderings. Keeps arbitrary Pi.
// Witness ties break to the lexicographically smallest ordering.
DeviationReport max_dev_bruteforce(const LoInstance& inst, const SolverLimits& limits = {});

// Maximum of (satisfied arcs + satisfied betweenness constraints) over all
// orderings, by dynamic programming over variable subsets: placing x after
// set S gains the arcs into x from S plus the betweenness constraints with
// middle x and exactly one outer endpoint in S.
std::pair<long long, LinearOrdering> max_sat_mixed(const MixedInstance& mixed,
                                                   const SolverLimits& limits = {});

// Exact maximum deviation via normalization to Linear Ordering, triple
// decomposition and the subset DP. Agrees exactly with max_dev_bruteforce.
DeviationReport max_dev_dp(const LoInstance& inst, const SolverLimits& limits = {});

// Exact maximum deviation of a mixed instance: max_sat_mixed minus (r/2+s/3).
DeviationReport max_dev_mixed(const MixedInstance& mixed, const SolverLimits& limits = {});

// True iff the maximum deviation is at least k.
bool decide_above_average(const LoInstance& inst, const SolverLimits& limits = {});

}  // namespace tpcsp

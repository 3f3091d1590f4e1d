#include "tpcsp/solver.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "tpcsp/decompose.hpp"

namespace tpcsp {

namespace {

void check_limits(const SolverLimits& limits) {
  if (limits.max_brute_n < 3 || limits.max_dp_n < 3)
    fail(Errc::invalid_argument, "solver limits must be at least 3");
  if (limits.max_dp_n > 30)
    fail(Errc::invalid_argument, "subset-DP limit above 30 is not supported");
  if (limits.threads < 1) fail(Errc::invalid_argument, "threads must be at least 1");
}

struct BruteBest {
  bool any = false;
  long long satisfied = -1;
  LinearOrdering witness;

  void offer(long long sat, const std::vector<VarId>& order) {
    if (!any || sat > satisfied) {
      any = true;
      satisfied = sat;
      witness.positions = order;
    }
    // next_permutation enumerates in lex order, so the first maximum stays
  }

  void merge(const BruteBest& other) {
    if (!other.any) return;
    if (!any || other.satisfied > satisfied ||
        (other.satisfied == satisfied && other.witness.positions < witness.positions)) {
      *this = other;
    }
  }
};

BruteBest brute_scan_first(const LoInstance& inst, VarId first) {
  int n = inst.n();
  std::vector<VarId> rest;
  for (VarId v = 0; v < n; ++v)
    if (v != first) rest.push_back(v);
  BruteBest best;
  std::vector<VarId> order(static_cast<size_t>(n));
  order[0] = first;
  do {
    std::copy(rest.begin(), rest.end(), order.begin() + 1);
    LinearOrdering alpha{order};
    best.offer(count_satisfied(inst, alpha), order);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

}  // namespace

DeviationReport max_dev_bruteforce(const LoInstance& inst, const SolverLimits& limits) {
  check_limits(limits);
  validate(inst);
  int n = inst.n();
  if (n > limits.max_brute_n)
    fail(Errc::limit_exceeded,
         "instance has " + std::to_string(n) + " variables, brute-force limit is " +
             std::to_string(limits.max_brute_n));

  BruteBest best;
  if (n == 0) {
    best.any = true;
    best.satisfied = 0;
  } else if (limits.threads <= 1 || n < 4) {
    std::vector<VarId> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    do {
      LinearOrdering alpha{order};
      best.offer(count_satisfied(inst, alpha), order);
    } while (std::next_permutation(order.begin(), order.end()));
  } else {
    // fan out over the first placed variable; merging in index order keeps
    // the lexicographic tie-break deterministic
    std::vector<BruteBest> partial(static_cast<size_t>(n));
    std::vector<std::thread> pool;
    int workers = std::min(limits.threads, n);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (VarId first = w; first < n; first += workers)
          partial[static_cast<size_t>(first)] = brute_scan_first(inst, first);
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& p : partial) best.merge(p);
  }

  DeviationReport report;
  report.satisfied = best.satisfied;
  report.average = Rational(inst.pi.size(), 6) * Rational(inst.total_mult());
  report.deviation = Rational(best.satisfied) - report.average;
  if (n > 0) report.witness = best.witness;
  else report.witness = LinearOrdering{};
  return report;
}

std::pair<long long, LinearOrdering> max_sat_mixed(const MixedInstance& mixed,
                                                   const SolverLimits& limits) {
  check_limits(limits);
  validate(mixed);
  int n = mixed.n();
  if (n > limits.max_dp_n)
    fail(Errc::limit_exceeded, "instance has " + std::to_string(n) +
                                   " variables, subset-DP limit is " +
                                   std::to_string(limits.max_dp_n));
  if (n == 0) return {0, LinearOrdering{}};

  // per-variable gain inputs
  struct In {
    VarId tail;
    long long mult;
  };
  struct Mid {
    VarId a, b;
    long long mult;
  };
  std::vector<std::vector<In>> incoming(static_cast<size_t>(n));
  std::vector<std::vector<Mid>> middles(static_cast<size_t>(n));
  for (const auto& a : mixed.arcs) incoming[static_cast<size_t>(a.head)].push_back({a.tail, a.mult});
  for (const auto& b : mixed.btws)
    middles[static_cast<size_t>(b.middle)].push_back({b.outer_lo, b.outer_hi, b.mult});

  auto gain = [&](VarId x, uint32_t placed) {
    long long g = 0;
    for (const auto& in : incoming[static_cast<size_t>(x)])
      if ((placed >> in.tail) & 1u) g += in.mult;
    for (const auto& mid : middles[static_cast<size_t>(x)]) {
      bool a_in = (placed >> mid.a) & 1u;
      bool b_in = (placed >> mid.b) & 1u;
      if (a_in != b_in) g += mid.mult;
    }
    return g;
  };

  // best[S] = max gain achievable by placing the variables outside S, given
  // that exactly the variables of S are already placed
  const uint32_t full = (1u << n) - 1u;
  std::vector<long long> best(static_cast<size_t>(full) + 1, 0);
  for (uint32_t set = full; set-- > 0;) {
    long long b = -1;
    for (VarId x = 0; x < n; ++x) {
      if ((set >> x) & 1u) continue;
      long long cand = gain(x, set) + best[set | (1u << x)];
      b = std::max(b, cand);
    }
    best[set] = b;
  }

  // lexicographically smallest optimal ordering
  LinearOrdering witness;
  uint32_t placed = 0;
  while (placed != full) {
    for (VarId x = 0; x < n; ++x) {
      if ((placed >> x) & 1u) continue;
      if (gain(x, placed) + best[placed | (1u << x)] == best[placed]) {
        witness.positions.push_back(x);
        placed |= 1u << x;
        break;
      }
    }
  }
  return {best[0], witness};
}

DeviationReport max_dev_dp(const LoInstance& inst, const SolverLimits& limits) {
  check_limits(limits);
  validate(inst);
  int n = inst.n();
  if (n > limits.max_dp_n)
    fail(Errc::limit_exceeded, "instance has " + std::to_string(n) +
                                   " variables, subset-DP limit is " +
                                   std::to_string(limits.max_dp_n));
  long long m = inst.total_mult();
  Rational average = Rational(inst.pi.size(), 6) * Rational(m);

  DeviationReport report;
  report.average = average;

  if (inst.pi.empty() || inst.pi.full()) {
    // nothing (or everything) is ever satisfied; every ordering is optimal
    report.satisfied = inst.pi.full() ? m : 0;
    report.deviation = Rational(report.satisfied) - average;
    LinearOrdering identity;
    identity.positions.resize(static_cast<size_t>(n));
    std::iota(identity.positions.begin(), identity.positions.end(), 0);
    report.witness = identity;
    return report;
  }

  LoInstance lo = to_linear_ordering(inst);
  long long m0 = lo.total_mult();
  MixedInstance mixed = decompose_lo(lo);
  auto [best, witness] = max_sat_mixed(mixed, limits);
  // per ordering, satisfied(mixed) = 2*satisfied(C0) + m0, so the maximizers
  // coincide and the satisfied count follows exactly
  long long satisfied = (best - m0) / 2;
  report.satisfied = satisfied;
  report.deviation = Rational(satisfied) - average;
  report.witness = witness;
  return report;
}

DeviationReport max_dev_mixed(const MixedInstance& mixed, const SolverLimits& limits) {
  auto [best, witness] = max_sat_mixed(mixed, limits);
  DeviationReport report;
  report.satisfied = best;
  report.average = mixed_average(mixed);
  report.deviation = Rational(best) - report.average;
  report.witness = witness;
  return report;
}

bool decide_above_average(const LoInstance& inst, const SolverLimits& limits) {
  check_limits(limits);
  int n = inst.n();
  DeviationReport report;
  if (n <= limits.max_dp_n) report = max_dev_dp(inst, limits);
  else if (n <= limits.max_brute_n) report = max_dev_bruteforce(inst, limits);
  else
    fail(Errc::limit_exceeded,
         "instance has " + std::to_string(n) + " variables, beyond both solver limits");
  return report.deviation >= Rational(inst.k);
}

}  // namespace tpcsp

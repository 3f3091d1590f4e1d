#include "tpcsp/hardgen.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace tpcsp {

namespace {

std::vector<Arc> arcs_of_cycles(const std::vector<Cycle3>& cycles) {
  std::vector<Arc> arcs;
  arcs.reserve(cycles.size() * 3);
  for (const auto& c : cycles) {
    arcs.push_back({c.a, c.b, 1});
    arcs.push_back({c.b, c.c, 1});
    arcs.push_back({c.c, c.a, 1});
  }
  return arcs;
}

// rejection-sampled uniform draw, deterministic across platforms
uint64_t bounded(std::mt19937_64& rng, uint64_t bound) {
  if (bound == 0) fail(Errc::invalid_argument, "empty draw range");
  uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

}  // namespace

HardFamily generate_g(int level) {
  if (level < 0) fail(Errc::invalid_argument, "level must be non-negative");
  HardFamily fam;
  fam.level = 0;
  fam.vars.add("x1");
  fam.vars.add("x2");
  fam.vars.add("x3");
  fam.cycles = {{0, 1, 2}, {2, 1, 0}};

  for (int lvl = 1; lvl <= level; ++lvl) {
    HardFamily next;
    next.level = lvl;
    int half = fam.vars.size();
    next.vars = fam.vars;
    std::string primes(static_cast<size_t>(1) << (lvl - 1), '\'');
    for (const auto& name : fam.vars.names) next.vars.add(name + primes);

    // drop the first cycle of each half, bridge with six cross cycles
    Cycle3 c = fam.cycles.front();
    VarId a = c.a, b = c.b, cc = c.c;
    VarId d = c.a + half, e = c.b + half, f = c.c + half;
    for (size_t i = 1; i < fam.cycles.size(); ++i) next.cycles.push_back(fam.cycles[i]);
    for (size_t i = 1; i < fam.cycles.size(); ++i) {
      const Cycle3& o = fam.cycles[i];
      next.cycles.push_back({o.a + half, o.b + half, o.c + half});
    }
    next.cycles.push_back({a, b, f});
    next.cycles.push_back({b, cc, e});
    next.cycles.push_back({cc, a, d});
    next.cycles.push_back({d, e, cc});
    next.cycles.push_back({e, f, b});
    next.cycles.push_back({f, d, a});
    fam = std::move(next);
  }
  fam.digraph = arcs_of_cycles(fam.cycles);
  return fam;
}

LoInstance cycles_to_lo_instance(const HardFamily& family, long long k) {
  if (k < 0) fail(Errc::invalid_argument, "k must be non-negative");
  LoInstance out;
  out.vars = family.vars;
  out.pi = PiSet(1u);
  out.k = k;
  for (const auto& c : family.cycles) {
    out.constraints.push_back({c.a, c.b, c.c, 1});
    out.constraints.push_back({c.b, c.c, c.a, 1});
    out.constraints.push_back({c.c, c.a, c.b, 1});
  }
  out.normalize();
  return out;
}

bool check_symmetric_no_parallel(const HardFamily& family) {
  std::multiset<std::pair<VarId, VarId>> arcs;
  for (const auto& a : family.digraph)
    for (long long i = 0; i < a.mult; ++i) arcs.insert({a.tail, a.head});
  for (const auto& arc : arcs) {
    if (arcs.count(arc) != 1) return false;          // parallel arcs
    if (arcs.count({arc.second, arc.first}) != 1) return false;  // missing reverse
  }
  return true;
}

bool check_subset_asymmetry(const HardFamily& family, const std::vector<int>& cycle_indices) {
  if (cycle_indices.empty() || cycle_indices.size() >= family.cycles.size())
    fail(Errc::invalid_argument, "cycle subset must be nonempty and proper");
  std::set<int> chosen(cycle_indices.begin(), cycle_indices.end());
  if (chosen.size() != cycle_indices.size())
    fail(Errc::invalid_argument, "cycle subset repeats an index");
  std::set<std::pair<VarId, VarId>> arcs;
  for (int idx : chosen) {
    if (idx < 0 || idx >= static_cast<int>(family.cycles.size()))
      fail(Errc::invalid_argument, "cycle index out of range");
    const Cycle3& c = family.cycles[static_cast<size_t>(idx)];
    arcs.insert({c.a, c.b});
    arcs.insert({c.b, c.c});
    arcs.insert({c.c, c.a});
  }
  for (const auto& [u, v] : arcs)
    if (!arcs.count({v, u})) return true;
  return false;
}

LoInstance gen_random(const RandSpec& spec) {
  if (spec.n < 3) fail(Errc::invalid_argument, "random instances need at least 3 variables");
  if (spec.m < 0) fail(Errc::invalid_argument, "m must be non-negative");
  LoInstance out;
  for (int i = 0; i < spec.n; ++i) out.vars.add("v" + std::to_string(i));
  out.pi = spec.pi;
  std::mt19937_64 rng(spec.seed);
  for (long long c = 0; c < spec.m; ++c) {
    auto v1 = static_cast<VarId>(bounded(rng, static_cast<uint64_t>(spec.n)));
    auto v2 = static_cast<VarId>(bounded(rng, static_cast<uint64_t>(spec.n - 1)));
    if (v2 >= v1) ++v2;
    auto v3 = static_cast<VarId>(bounded(rng, static_cast<uint64_t>(spec.n - 2)));
    if (v3 >= std::min(v1, v2)) ++v3;
    if (v3 >= std::max(v1, v2)) ++v3;
    out.constraints.push_back({v1, v2, v3, 1});
  }
  out.normalize();
  return out;
}

MixedInstance gen_random_mixed(int n, long long num_arcs, long long num_btws, uint64_t seed) {
  if (n < 3) fail(Errc::invalid_argument, "random instances need at least 3 variables");
  if (num_arcs < 0 || num_btws < 0) fail(Errc::invalid_argument, "counts must be non-negative");
  MixedInstance out;
  for (int i = 0; i < n; ++i) out.vars.add("v" + std::to_string(i));
  std::mt19937_64 rng(seed);
  for (long long c = 0; c < num_arcs; ++c) {
    auto u = static_cast<VarId>(bounded(rng, static_cast<uint64_t>(n)));
    auto v = static_cast<VarId>(bounded(rng, static_cast<uint64_t>(n - 1)));
    if (v >= u) ++v;
    out.arcs.push_back({u, v, 1});
  }
  for (long long c = 0; c < num_btws; ++c) {
    auto mid = static_cast<VarId>(bounded(rng, static_cast<uint64_t>(n)));
    auto o1 = static_cast<VarId>(bounded(rng, static_cast<uint64_t>(n - 1)));
    if (o1 >= mid) ++o1;
    auto o2 = static_cast<VarId>(bounded(rng, static_cast<uint64_t>(n - 2)));
    if (o2 >= std::min(mid, o1)) ++o2;
    if (o2 >= std::max(mid, o1)) ++o2;
    out.btws.push_back({mid, std::min(o1, o2), std::max(o1, o2), 1});
  }
  out.normalize();
  return out;
}

}  // namespace tpcsp

#include "tpcsp/decompose.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <tuple>

namespace tpcsp {

LoInstance to_linear_ordering(const LoInstance& inst) {
  validate(inst);
  if (inst.pi.empty() || inst.pi.full())
    fail(Errc::trivial_pi, "empty Pi and full S3 are decided directly, not normalized");
  LoInstance out;
  out.vars = inst.vars;
  out.pi = PiSet(1u);  // {(123)}
  out.k = inst.k;
  for (const auto& c : inst.constraints) {
    const VarId v[3] = {c.v1, c.v2, c.v3};
    for (const Perm3& p : inst.pi.members()) {
      const auto& w = p.word();
      out.constraints.push_back({v[w[0] - 1], v[w[1] - 1], v[w[2] - 1], c.mult});
    }
  }
  out.normalize();
  return out;
}

MixedInstance decompose_lo(const LoInstance& inst) {
  validate(inst);
  if (inst.pi != PiSet(1u))
    fail(Errc::precondition, "decomposition requires the Linear Ordering constraint set");
  MixedInstance mixed;
  mixed.vars = inst.vars;
  for (const auto& c : inst.constraints) {
    mixed.arcs.push_back({c.v1, c.v2, c.mult});
    mixed.arcs.push_back({c.v2, c.v3, c.mult});
    VarId lo = std::min(c.v1, c.v3), hi = std::max(c.v1, c.v3);
    mixed.btws.push_back({c.v2, lo, hi, c.mult});
  }
  mixed.normalize();
  return mixed;
}

std::pair<std::vector<BtwConstraint>, long long> reduce_betweenness(
    const std::vector<BtwConstraint>& btws) {
  // group by variable 3-set; within a group index by the middle choice
  std::map<std::tuple<VarId, VarId, VarId>, std::map<VarId, long long>> groups;
  for (const auto& b : btws) {
    VarId lo = b.outer_lo, hi = b.outer_hi;
    if (lo > hi) std::swap(lo, hi);
    std::array<VarId, 3> key = {b.middle, lo, hi};
    std::sort(key.begin(), key.end());
    groups[{key[0], key[1], key[2]}][b.middle] += b.mult;
  }
  std::vector<BtwConstraint> surviving;
  long long t = 0;
  for (const auto& [key, by_middle] : groups) {
    long long removable = by_middle.size() == 3 ? std::min({by_middle.begin()->second,
                                                            std::next(by_middle.begin())->second,
                                                            std::next(by_middle.begin(), 2)->second})
                                                : 0;
    t += removable;
    std::array<VarId, 3> set = {std::get<0>(key), std::get<1>(key), std::get<2>(key)};
    for (const auto& [middle, mult] : by_middle) {
      long long left = mult - removable;
      if (left <= 0) continue;
      std::array<VarId, 2> outer{};
      int oi = 0;
      for (VarId v : set)
        if (v != middle) outer[static_cast<size_t>(oi++)] = v;
      surviving.push_back({middle, outer[0], outer[1], left});
    }
  }
  return {surviving, t};
}

std::pair<std::vector<Arc>, long long> reduce_arcs(const std::vector<Arc>& arcs) {
  std::map<std::pair<VarId, VarId>, long long> mult;
  for (const auto& a : arcs) mult[{a.tail, a.head}] += a.mult;
  std::vector<Arc> surviving;
  long long b = 0;
  for (const auto& [key, m] : mult) {
    auto [u, v] = key;
    if (u < v) {
      auto it = mult.find({v, u});
      long long opposite = it == mult.end() ? 0 : it->second;
      b += std::min(m, opposite);
    }
    long long left = m;
    auto it = mult.find({v, u});
    if (it != mult.end()) left -= std::min(m, it->second);
    if (left > 0) surviving.push_back({u, v, left});
  }
  return {surviving, b};
}

MixedInstance reduce_mixed(const MixedInstance& mixed, long long* b, long long* t) {
  validate(mixed);
  MixedInstance out;
  out.vars = mixed.vars;
  auto [arcs, nb] = reduce_arcs(mixed.arcs);
  auto [btws, nt] = reduce_betweenness(mixed.btws);
  out.arcs = std::move(arcs);
  out.btws = std::move(btws);
  out.normalize();
  if (b) *b = nb;
  if (t) *t = nt;
  return out;
}

LoInstance recompose_kernel(const MixedInstance& reduced, long long k) {
  validate(reduced);
  if (k < 0) fail(Errc::invalid_argument, "k must be non-negative");

  // keep only variables that occur, in their original order
  std::vector<bool> used(static_cast<size_t>(reduced.n()), false);
  for (const auto& a : reduced.arcs) used[static_cast<size_t>(a.tail)] = used[static_cast<size_t>(a.head)] = true;
  for (const auto& b : reduced.btws)
    used[static_cast<size_t>(b.middle)] = used[static_cast<size_t>(b.outer_lo)] =
        used[static_cast<size_t>(b.outer_hi)] = true;

  LoInstance out;
  out.pi = PiSet(1u);
  out.k = k;
  std::vector<VarId> remap(static_cast<size_t>(reduced.n()), -1);
  for (VarId v = 0; v < reduced.n(); ++v)
    if (used[static_cast<size_t>(v)]) remap[static_cast<size_t>(v)] = out.vars.add(reduced.vars.name(v));
  VarId omega = out.vars.add(out.vars.fresh_name("_omega"));

  for (const auto& a : reduced.arcs) {
    VarId u = remap[static_cast<size_t>(a.tail)], v = remap[static_cast<size_t>(a.head)];
    out.constraints.push_back({omega, u, v, a.mult});
    out.constraints.push_back({u, omega, v, a.mult});
    out.constraints.push_back({u, v, omega, a.mult});
  }
  for (const auto& b : reduced.btws) {
    VarId a = remap[static_cast<size_t>(b.middle)];
    VarId lo = remap[static_cast<size_t>(b.outer_lo)], hi = remap[static_cast<size_t>(b.outer_hi)];
    out.constraints.push_back({lo, a, hi, b.mult});
    out.constraints.push_back({hi, a, lo, b.mult});
  }
  out.normalize();
  return out;
}

KernelResult kernelize_lo(const LoInstance& inst, const KernelConfig& cfg) {
  validate(inst);
  if (inst.pi != PiSet(1u))
    fail(Errc::precondition, "kernelization is defined on Linear Ordering instances");
  if (cfg.c_constant.sign() <= 0) fail(Errc::invalid_argument, "c constant must be positive");
  if (!cfg.allow_override && cfg.c_constant != KernelConfig::default_c())
    fail(Errc::invalid_argument, "non-default c constant requires allow_override");

  MixedInstance mixed = decompose_lo(inst);
  KernelResult result;
  mixed = reduce_mixed(mixed, &result.stats.b, &result.stats.t);
  result.stats.r = mixed.r();
  result.stats.s = mixed.s();

  // dev >= 0 always holds (the average is attainable), so k = 0 is a yes;
  // and past the threshold the probabilistic bound certifies a yes
  Rational surviving(result.stats.r + result.stats.s);
  Rational threshold = cfg.c_constant * Rational(inst.k) * Rational(inst.k);
  if (inst.k == 0 || surviving >= threshold) {
    result.verdict = KernelResult::Verdict::YES;
    return result;
  }
  result.verdict = KernelResult::Verdict::KERNEL;
  // recomposition doubles every deviation, so the parameter doubles with it
  result.kernel = recompose_kernel(mixed, 2 * inst.k);
  return result;
}

}  // namespace tpcsp

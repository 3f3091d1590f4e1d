#include "tpcsp/instance.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace tpcsp {

VarId VarTable::add(const std::string& name) {
  if (name.empty()) fail(Errc::invalid_instance, "empty variable name");
  if (find(name)) fail(Errc::invalid_instance, "duplicate variable name: " + name);
  names.push_back(name);
  return static_cast<VarId>(names.size() - 1);
}

VarId VarTable::find_or_add(const std::string& name) {
  if (auto v = find(name)) return *v;
  return add(name);
}

std::optional<VarId> VarTable::find(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<VarId>(i);
  return std::nullopt;
}

std::string VarTable::fresh_name(const std::string& base) const {
  if (!find(base)) return base;
  for (long long i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!find(cand)) return cand;
  }
}

std::vector<int> LinearOrdering::position_of(int n_vars) const {
  if (size() != n_vars) fail(Errc::dimension_mismatch, "ordering length differs from n");
  std::vector<int> pos(static_cast<size_t>(n_vars), -1);
  for (int i = 0; i < n_vars; ++i) {
    VarId v = positions[static_cast<size_t>(i)];
    if (v < 0 || v >= n_vars) fail(Errc::invalid_instance, "ordering names an unknown variable");
    if (pos[static_cast<size_t>(v)] != -1)
      fail(Errc::invalid_instance, "ordering repeats a variable");
    pos[static_cast<size_t>(v)] = i;
  }
  return pos;
}

long long LoInstance::total_mult() const {
  long long m = 0;
  for (const auto& c : constraints) m += c.mult;
  return m;
}

void LoInstance::normalize() {
  validate(*this);
  std::map<std::tuple<VarId, VarId, VarId>, long long> merged;
  for (const auto& c : constraints) merged[{c.v1, c.v2, c.v3}] += c.mult;
  constraints.clear();
  for (const auto& [key, mult] : merged)
    constraints.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), mult});
}

long long MixedInstance::r() const {
  long long t = 0;
  for (const auto& a : arcs) t += a.mult;
  return t;
}

long long MixedInstance::s() const {
  long long t = 0;
  for (const auto& b : btws) t += b.mult;
  return t;
}

void MixedInstance::normalize() {
  for (auto& b : btws)
    if (b.outer_lo > b.outer_hi) std::swap(b.outer_lo, b.outer_hi);
  validate(*this);
  std::map<std::pair<VarId, VarId>, long long> arc_merged;
  for (const auto& a : arcs) arc_merged[{a.tail, a.head}] += a.mult;
  arcs.clear();
  for (const auto& [key, mult] : arc_merged) arcs.push_back({key.first, key.second, mult});
  std::map<std::tuple<VarId, VarId, VarId>, long long> btw_merged;
  for (const auto& b : btws) btw_merged[{b.middle, b.outer_lo, b.outer_hi}] += b.mult;
  btws.clear();
  for (const auto& [key, mult] : btw_merged)
    btws.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), mult});
}

void validate(const LoInstance& inst) {
  int n = inst.n();
  if (inst.k < 0) fail(Errc::invalid_instance, "k must be non-negative");
  for (const auto& c : inst.constraints) {
    if (c.mult < 1) fail(Errc::invalid_instance, "constraint multiplicity must be >= 1");
    if (c.v1 == c.v2 || c.v1 == c.v3 || c.v2 == c.v3)
      fail(Errc::invalid_instance, "constraint variables must be pairwise distinct");
    for (VarId v : {c.v1, c.v2, c.v3})
      if (v < 0 || v >= n) fail(Errc::invalid_instance, "constraint names an unknown variable");
  }
}

void validate(const MixedInstance& mixed) {
  int n = mixed.n();
  for (const auto& a : mixed.arcs) {
    if (a.mult < 1) fail(Errc::invalid_instance, "arc multiplicity must be >= 1");
    if (a.tail == a.head) fail(Errc::invalid_instance, "arc tail equals head");
    for (VarId v : {a.tail, a.head})
      if (v < 0 || v >= n) fail(Errc::invalid_instance, "arc names an unknown variable");
  }
  for (const auto& b : mixed.btws) {
    if (b.mult < 1) fail(Errc::invalid_instance, "betweenness multiplicity must be >= 1");
    if (b.outer_lo == b.outer_hi || b.middle == b.outer_lo || b.middle == b.outer_hi)
      fail(Errc::invalid_instance, "betweenness variables must be pairwise distinct");
    for (VarId v : {b.middle, b.outer_lo, b.outer_hi})
      if (v < 0 || v >= n) fail(Errc::invalid_instance, "betweenness names an unknown variable");
  }
}

namespace {

// Index of the unique permutation ordering the triple increasingly under pos.
inline int observed_perm_index(int p1, int p2, int p3) {
  // word (a,b,c): the a-th entry of the triple comes first, etc.
  int a, b, c;
  if (p1 < p2) {
    if (p2 < p3) a = 1, b = 2, c = 3;
    else if (p1 < p3) a = 1, b = 3, c = 2;
    else a = 3, b = 1, c = 2;
  } else {
    if (p1 < p3) a = 2, b = 1, c = 3;
    else if (p2 < p3) a = 2, b = 3, c = 1;
    else a = 3, b = 2, c = 1;
  }
  return Perm3::from_word({a, b, c}).index;
}

}  // namespace

bool pi_satisfies(const TripleConstraint& c, const LinearOrdering& alpha, const PiSet& pi) {
  int n = alpha.size();
  for (VarId v : {c.v1, c.v2, c.v3})
    if (v < 0 || v >= n) fail(Errc::invalid_instance, "constraint variable not placed by ordering");
  std::vector<int> pos = alpha.position_of(n);
  int idx = observed_perm_index(pos[static_cast<size_t>(c.v1)], pos[static_cast<size_t>(c.v2)],
                                pos[static_cast<size_t>(c.v3)]);
  return pi.contains(idx);
}

long long count_satisfied(const LoInstance& inst, const LinearOrdering& alpha) {
  std::vector<int> pos = alpha.position_of(inst.n());
  long long count = 0;
  for (const auto& c : inst.constraints) {
    int idx = observed_perm_index(pos[static_cast<size_t>(c.v1)], pos[static_cast<size_t>(c.v2)],
                                  pos[static_cast<size_t>(c.v3)]);
    if (inst.pi.contains(idx)) count += c.mult;
  }
  return count;
}

Rational deviation(const LoInstance& inst, const LinearOrdering& alpha) {
  long long sat = count_satisfied(inst, alpha);
  Rational avg = Rational(inst.pi.size(), 6) * Rational(inst.total_mult());
  return Rational(sat) - avg;
}

long long count_satisfied_mixed(const MixedInstance& mixed, const LinearOrdering& alpha) {
  std::vector<int> pos = alpha.position_of(mixed.n());
  long long count = 0;
  for (const auto& a : mixed.arcs)
    if (pos[static_cast<size_t>(a.tail)] < pos[static_cast<size_t>(a.head)]) count += a.mult;
  for (const auto& b : mixed.btws) {
    int pm = pos[static_cast<size_t>(b.middle)];
    int pl = pos[static_cast<size_t>(b.outer_lo)];
    int ph = pos[static_cast<size_t>(b.outer_hi)];
    if (std::min(pl, ph) < pm && pm < std::max(pl, ph)) count += b.mult;
  }
  return count;
}

Rational mixed_average(const MixedInstance& mixed) {
  return Rational(mixed.r(), 2) + Rational(mixed.s(), 3);
}

namespace {

std::multiset<std::tuple<std::string, std::string, std::string, long long>> lo_key(
    const LoInstance& inst) {
  std::multiset<std::tuple<std::string, std::string, std::string, long long>> key;
  for (const auto& c : inst.constraints)
    key.insert({inst.vars.name(c.v1), inst.vars.name(c.v2), inst.vars.name(c.v3), c.mult});
  return key;
}

}  // namespace

bool semantically_equal(const LoInstance& a, const LoInstance& b) {
  if (a.pi != b.pi || a.k != b.k) return false;
  std::multiset<std::string> an(a.vars.names.begin(), a.vars.names.end());
  std::multiset<std::string> bn(b.vars.names.begin(), b.vars.names.end());
  if (an != bn) return false;
  return lo_key(a) == lo_key(b);
}

bool semantically_equal(const MixedInstance& a, const MixedInstance& b) {
  std::multiset<std::string> an(a.vars.names.begin(), a.vars.names.end());
  std::multiset<std::string> bn(b.vars.names.begin(), b.vars.names.end());
  if (an != bn) return false;
  std::multiset<std::tuple<std::string, std::string, long long>> aa, ba;
  for (const auto& x : a.arcs) aa.insert({a.vars.name(x.tail), a.vars.name(x.head), x.mult});
  for (const auto& x : b.arcs) ba.insert({b.vars.name(x.tail), b.vars.name(x.head), x.mult});
  if (aa != ba) return false;
  // outer pairs are unordered, so canonicalize them by name
  std::multiset<std::tuple<std::string, std::string, std::string, long long>> ab, bb;
  for (const auto& x : a.btws) {
    auto [lo, hi] = std::minmax(a.vars.name(x.outer_lo), a.vars.name(x.outer_hi));
    ab.insert({a.vars.name(x.middle), lo, hi, x.mult});
  }
  for (const auto& x : b.btws) {
    auto [lo, hi] = std::minmax(b.vars.name(x.outer_lo), b.vars.name(x.outer_hi));
    bb.insert({b.vars.name(x.middle), lo, hi, x.mult});
  }
  return ab == bb;
}

}  // namespace tpcsp

#include "tpcsp/moments.hpp"

#include <algorithm>

namespace tpcsp {

namespace {

// table values scaled by 6 so per-assignment products stay integral
inline int x6(int lu, int lv) { return lu == lv ? 0 : (lu < lv ? 3 : -3); }

inline int y6(int lu, int lv, int lw) {
  if (lu == lv && lv == lw) return 0;
  if (lu == lw) return -2;                 // middle apart from tied outers
  if (lv == lu || lv == lw) return 1;      // middle tied with exactly one outer
  if ((lu < lv && lv < lw) || (lw < lv && lv < lu)) return 4;
  return -2;
}

inline int z6(int lu, int lv, int lw) {
  if (lu < lv && lv < lw) return 5;
  if ((lu == lv && lv < lw) || (lu < lv && lv == lw)) return 2;
  if (lu == lv && lv == lw) return 0;
  return -1;
}

// one arc, betweenness constraint or triple viewed uniformly
struct Item {
  enum class Kind { Arc, Btw, Triple };
  Kind kind;
  std::array<VarId, 3> vars{};  // arc uses the first two
  int nvars = 0;
  long long mult = 1;

  int value6(const int* levels) const {
    switch (kind) {
      case Kind::Arc: return x6(levels[0], levels[1]);
      case Kind::Btw: return y6(levels[1], levels[0], levels[2]);  // stored middle-first
      case Kind::Triple: return z6(levels[0], levels[1], levels[2]);
    }
    return 0;
  }
};

std::vector<Item> mixed_items(const MixedInstance& mixed) {
  std::vector<Item> items;
  items.reserve(mixed.arcs.size() + mixed.btws.size());
  for (const auto& a : mixed.arcs)
    items.push_back({Item::Kind::Arc, {a.tail, a.head, 0}, 2, a.mult});
  for (const auto& b : mixed.btws)
    items.push_back({Item::Kind::Btw, {b.middle, b.outer_lo, b.outer_hi}, 3, b.mult});
  return items;
}

std::vector<Item> triple_items(const LoInstance& inst) {
  if (inst.pi != PiSet(1u))
    fail(Errc::precondition, "moment tables are defined on Linear Ordering triples");
  std::vector<Item> items;
  items.reserve(inst.constraints.size());
  for (const auto& c : inst.constraints)
    items.push_back({Item::Kind::Triple, {c.v1, c.v2, c.v3}, 3, c.mult});
  return items;
}

// E[V_a * V_b] over the joint support; zero for disjoint supports
Rational pair_expectation(const Item& a, const Item& b) {
  std::vector<VarId> support(a.vars.begin(), a.vars.begin() + a.nvars);
  support.insert(support.end(), b.vars.begin(), b.vars.begin() + b.nvars);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (static_cast<int>(support.size()) == a.nvars + b.nvars) return Rational(0);

  auto slot = [&](VarId v) {
    return static_cast<int>(std::lower_bound(support.begin(), support.end(), v) - support.begin());
  };
  int sa[3], sb[3];
  for (int i = 0; i < a.nvars; ++i) sa[i] = slot(a.vars[static_cast<size_t>(i)]);
  for (int i = 0; i < b.nvars; ++i) sb[i] = slot(b.vars[static_cast<size_t>(i)]);

  int j = static_cast<int>(support.size());
  long long total = 0;
  long long count = 1LL << (2 * j);
  int levels[6] = {0};
  int la[3], lb[3];
  for (long long code = 0; code < count; ++code) {
    long long c = code;
    for (int i = 0; i < j; ++i) {
      levels[i] = static_cast<int>(c & 3);
      c >>= 2;
    }
    for (int i = 0; i < a.nvars; ++i) la[i] = levels[sa[i]];
    for (int i = 0; i < b.nvars; ++i) lb[i] = levels[sb[i]];
    total += static_cast<long long>(a.value6(la)) * b.value6(lb);
  }
  return Rational::from_wide(total, 36 * static_cast<Wide>(count));
}

Rational pairwise_second_moment(const std::vector<Item>& items) {
  Rational acc(0);
  for (size_t i = 0; i < items.size(); ++i) {
    for (size_t j = i; j < items.size(); ++j) {
      Rational e = pair_expectation(items[i], items[j]);
      if (e.is_zero()) continue;
      long long weight = items[i].mult * items[j].mult;
      if (i != j) weight *= 2;
      acc += Rational(weight) * e;
    }
  }
  return acc;
}

Rational full_second_moment(const std::vector<Item>& items, int n) {
  if (n > 5) fail(Errc::limit_exceeded, "full enumeration is limited to 5 variables");
  long long count = 1LL << (2 * n);
  Wide total = 0;
  LevelFn levels(static_cast<size_t>(std::max(n, 1)), 0);
  int lv[3];
  for (long long code = 0; code < count; ++code) {
    long long c = code;
    for (int i = 0; i < n; ++i) {
      levels[static_cast<size_t>(i)] = static_cast<int>(c & 3);
      c >>= 2;
    }
    long long sum6 = 0;
    for (const auto& it : items) {
      for (int i = 0; i < it.nvars; ++i) lv[i] = levels[static_cast<size_t>(it.vars[static_cast<size_t>(i)])];
      sum6 += it.mult * it.value6(lv);
    }
    total = checked_add(total, checked_mul(sum6, sum6));
  }
  return Rational::from_wide(total, 36 * static_cast<Wide>(count));
}

}  // namespace

Rational x_value(int level_u, int level_v) {
  if (level_u < 0 || level_u > 3 || level_v < 0 || level_v > 3)
    fail(Errc::invalid_argument, "levels must lie in {0,1,2,3}");
  return Rational(x6(level_u, level_v), 6);
}

Rational y_value(int level_u, int level_v, int level_w) {
  for (int l : {level_u, level_v, level_w})
    if (l < 0 || l > 3) fail(Errc::invalid_argument, "levels must lie in {0,1,2,3}");
  return Rational(y6(level_u, level_v, level_w), 6);
}

Rational z_value(int level_u, int level_v, int level_w) {
  for (int l : {level_u, level_v, level_w})
    if (l < 0 || l > 3) fail(Errc::invalid_argument, "levels must lie in {0,1,2,3}");
  return Rational(z6(level_u, level_v, level_w), 6);
}

Rational second_moment(const LoInstance& inst) {
  validate(inst);
  return pairwise_second_moment(triple_items(inst));
}

Rational second_moment(const MixedInstance& mixed) {
  validate(mixed);
  return pairwise_second_moment(mixed_items(mixed));
}

Rational second_moment_full(const LoInstance& inst) {
  validate(inst);
  return full_second_moment(triple_items(inst), inst.n());
}

Rational second_moment_full(const MixedInstance& mixed) {
  validate(mixed);
  return full_second_moment(mixed_items(mixed), mixed.n());
}

Rational cross_moment_xy(const MixedInstance& mixed) {
  validate(mixed);
  Rational acc(0);
  for (const auto& a : mixed.arcs) {
    Item ia{Item::Kind::Arc, {a.tail, a.head, 0}, 2, a.mult};
    for (const auto& b : mixed.btws) {
      Item ib{Item::Kind::Btw, {b.middle, b.outer_lo, b.outer_hi}, 3, b.mult};
      Rational e = pair_expectation(ia, ib);
      if (!e.is_zero()) acc += Rational(a.mult * b.mult) * e;
    }
  }
  return acc;
}

std::array<int, 2> eps_from_level(int level) {
  if (level < 0 || level > 3) fail(Errc::invalid_argument, "levels must lie in {0,1,2,3}");
  return {level >= 2 ? 1 : -1, (level & 1) ? 1 : -1};
}

int level_from_eps(int eps_hi, int eps_lo) {
  if ((eps_hi != 1 && eps_hi != -1) || (eps_lo != 1 && eps_lo != -1))
    fail(Errc::invalid_argument, "eps entries must be +1 or -1");
  return (eps_hi > 0 ? 2 : 0) + (eps_lo > 0 ? 1 : 0);
}

Rational poly_z_eval(const std::array<int, 6>& eps) {
  for (int e : eps)
    if (e != 1 && e != -1) fail(Errc::invalid_argument, "eps entries must be +1 or -1");
  long long total6 = 0;
  for (int q = 0; q < 64; ++q) {
    int prod = 1;
    int s = 0;
    for (int i = 0; i < 6; ++i) {
      int c = ((q >> (5 - i)) & 1) ? 1 : -1;
      if (c < 0) ++s;
      prod *= eps[static_cast<size_t>(i)] + c;
      if (prod == 0) break;
    }
    if (prod == 0) continue;
    int lu = ((q >> 5) & 1) * 2 + ((q >> 4) & 1);
    int lv = ((q >> 3) & 1) * 2 + ((q >> 2) & 1);
    int lw = ((q >> 1) & 1) * 2 + (q & 1);
    long long w6 = z6(lu, lv, lw);
    total6 += ((s & 1) ? -1LL : 1LL) * w6 * prod;
  }
  return Rational::from_wide(total6, 6 * 64);
}

Rational poly_z_instance(const LoInstance& inst, const EpsVector& eps) {
  validate(inst);
  if (inst.pi != PiSet(1u))
    fail(Errc::precondition, "the polynomial encoding is defined on Linear Ordering triples");
  if (static_cast<int>(eps.bits.size()) != 2 * inst.n())
    fail(Errc::dimension_mismatch, "eps vector must hold two bits per variable");
  Rational acc(0);
  for (const auto& c : inst.constraints) {
    std::array<int, 6> e{};
    int i = 0;
    for (VarId v : {c.v1, c.v2, c.v3}) {
      e[static_cast<size_t>(i++)] = eps.bits[static_cast<size_t>(2 * v)];
      e[static_cast<size_t>(i++)] = eps.bits[static_cast<size_t>(2 * v + 1)];
    }
    acc += Rational(c.mult) * poly_z_eval(e);
  }
  return acc;
}

std::array<Rational, 64> poly_z_fourier() {
  std::array<Rational, 64> coef;
  for (int t = 0; t < 64; ++t) {
    long long total6 = 0;
    for (int e = 0; e < 64; ++e) {
      int sign = 1;
      for (int i = 0; i < 6; ++i)  // t bit i selects eps_i; e bit (5-i) carries it
        if (((t >> i) & 1) && !((e >> (5 - i)) & 1)) sign = -sign;
      int lu = level_from_eps((e >> 5) & 1 ? 1 : -1, (e >> 4) & 1 ? 1 : -1);
      int lv = level_from_eps((e >> 3) & 1 ? 1 : -1, (e >> 2) & 1 ? 1 : -1);
      int lw = level_from_eps((e >> 1) & 1 ? 1 : -1, (e & 1) ? 1 : -1);
      total6 += sign * z6(lu, lv, lw);
    }
    coef[static_cast<size_t>(t)] = Rational::from_wide(total6, 6 * 64);
  }
  return coef;
}

std::pair<Rational, Rational> fourth_moment_check(const LoInstance& inst) {
  validate(inst);
  std::vector<Item> items = triple_items(inst);
  int n = inst.n();
  if (n > 5) fail(Errc::limit_exceeded, "full enumeration is limited to 5 variables");
  long long count = 1LL << (2 * n);
  Wide total2 = 0, total4 = 0;
  LevelFn levels(static_cast<size_t>(std::max(n, 1)), 0);
  int lv[3];
  for (long long code = 0; code < count; ++code) {
    long long c = code;
    for (int i = 0; i < n; ++i) {
      levels[static_cast<size_t>(i)] = static_cast<int>(c & 3);
      c >>= 2;
    }
    long long sum6 = 0;
    for (const auto& it : items) {
      for (int i = 0; i < it.nvars; ++i) lv[i] = levels[static_cast<size_t>(it.vars[static_cast<size_t>(i)])];
      sum6 += it.mult * it.value6(lv);
    }
    Wide sq = checked_mul(static_cast<Wide>(sum6), static_cast<Wide>(sum6));
    total2 = checked_add(total2, sq);
    total4 = checked_add(total4, checked_mul(sq, sq));
  }
  Rational e2 = Rational::from_wide(total2, 36 * static_cast<Wide>(count));
  Rational e4 = Rational::from_wide(total4, checked_mul(Wide(36) * 36, static_cast<Wide>(count)));
  Rational bound = Rational(531441) * e2 * e2;  // 9^6
  return {e4, bound};
}

bool check_lower_bound(const MixedInstance& reduced) {
  Rational z2 = second_moment(reduced) * Rational(1, 4);
  return z2 >= Rational(11 * (reduced.r() + reduced.s()), 3072);
}

PairClass classify_arc_pair(const Arc& a, const Arc& b) {
  for (const Arc* arc : {&a, &b})
    if (arc->tail == arc->head) fail(Errc::invalid_instance, "arc tail equals head");
  PairClass cls;
  if (a.tail == b.tail && a.head == b.head) {
    cls.kind = PairClass::Kind::S3;
    cls.anchor1 = a.tail;
    cls.anchor2 = a.head;
    return cls;
  }
  if (a.tail == b.head && a.head == b.tail)
    fail(Errc::invalid_argument, "mutually opposite arcs are removed by reduction");
  if (a.tail == b.tail || a.head == b.head) {
    cls.kind = PairClass::Kind::S1;
    cls.anchor1 = a.tail == b.tail ? a.tail : a.head;
    return cls;
  }
  if (a.tail == b.head || a.head == b.tail) {
    cls.kind = PairClass::Kind::S2;
    cls.anchor1 = a.tail == b.head ? a.tail : a.head;
    return cls;
  }
  cls.kind = PairClass::Kind::DISJOINT;
  return cls;
}

Rational pair_cross_expectation(const PairClass& cls) {
  switch (cls.kind) {
    case PairClass::Kind::S1: return Rational(5, 64);
    case PairClass::Kind::S2: return Rational(-5, 64);
    case PairClass::Kind::S3: return Rational(3, 16);
    case PairClass::Kind::DISJOINT: return Rational(0);
  }
  return Rational(0);
}

}  // namespace tpcsp

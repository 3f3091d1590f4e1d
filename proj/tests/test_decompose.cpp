#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tpcsp/decompose.hpp"
#include "tpcsp/hardgen.hpp"
#include "tpcsp/solver.hpp"

using namespace tpcsp;
using namespace tpcsp::testing;

namespace {

LoInstance uvw_instance(unsigned mask) {
  LoInstance inst;
  inst.vars.add("u");
  inst.vars.add("v");
  inst.vars.add("w");
  inst.pi = PiSet(mask);
  inst.constraints = {{0, 1, 2, 1}};
  return inst;
}

}  // namespace

TEST_CASE("normalization expands each constraint across the member permutations") {
  LoInstance btw = uvw_instance(0b100001);  // {123,321}
  LoInstance lo = to_linear_ordering(btw);
  CHECK(lo.pi == PiSet(1u));
  REQUIRE(lo.constraints.size() == 2);
  CHECK(lo.constraints[0] == TripleConstraint{0, 1, 2, 1});
  CHECK(lo.constraints[1] == TripleConstraint{2, 1, 0, 1});

  LoInstance lo0 = uvw_instance(1u);
  LoInstance same = to_linear_ordering(lo0);
  CHECK(same.constraints == lo0.constraints);

  CHECK_THROWS_AS(to_linear_ordering(uvw_instance(0)), Error);
  CHECK_THROWS_AS(to_linear_ordering(uvw_instance(63)), Error);
}

TEST_CASE("normalization preserves the answer for every k") {
  std::mt19937_64 seeds(11);
  for (int trial = 0; trial < 12; ++trial) {
    RandSpec spec;
    spec.n = 5 + static_cast<int>(seeds() % 2);  // 5 or 6
    spec.m = 3;
    spec.pi = PiSet(0b011001);  // a class-7 member
    if (trial % 2) spec.pi = PiSet(static_cast<unsigned>(1 + seeds() % 62));
    spec.seed = seeds();
    LoInstance inst = gen_random(spec);
    LoInstance lo = to_linear_ordering(inst);
    CHECK(lo.total_mult() == inst.total_mult() * inst.pi.size());
    for (long long k = 0; k <= 3; ++k) {
      inst.k = k;
      lo.k = k;
      CHECK(decide_above_average(inst) == decide_above_average(lo));
    }
  }
}

TEST_CASE("triple decomposition shape") {
  MixedInstance mixed = decompose_lo(uvw_instance(1u));
  REQUIRE(mixed.arcs.size() == 2);
  CHECK(mixed.arcs[0] == Arc{0, 1, 1});
  CHECK(mixed.arcs[1] == Arc{1, 2, 1});
  REQUIRE(mixed.btws.size() == 1);
  CHECK(mixed.btws[0] == BtwConstraint{1, 0, 2, 1});
  CHECK(mixed.r() == 2);
  CHECK(mixed.s() == 1);

  LoInstance empty = uvw_instance(1u);
  empty.constraints.clear();
  MixedInstance none = decompose_lo(empty);
  CHECK(none.arcs.empty());
  CHECK(none.btws.empty());

  CHECK_THROWS_AS(decompose_lo(uvw_instance(0b100001)), Error);
}

TEST_CASE("betweenness reduction deletes complete 3-sets by min multiplicity") {
  std::vector<BtwConstraint> complete = {{0, 1, 2, 1}, {1, 0, 2, 1}, {2, 0, 1, 1}};
  auto [left, t] = reduce_betweenness(complete);
  CHECK(left.empty());
  CHECK(t == 1);

  std::vector<BtwConstraint> doubled = {{1, 0, 2, 2}};
  auto [left2, t2] = reduce_betweenness(doubled);
  CHECK(left2 == doubled);
  CHECK(t2 == 0);

  std::vector<BtwConstraint> uneven = {{0, 1, 2, 1}, {1, 0, 2, 2}, {2, 0, 1, 1}};
  auto [left3, t3] = reduce_betweenness(uneven);
  REQUIRE(left3.size() == 1);
  CHECK(left3[0] == BtwConstraint{1, 0, 2, 1});
  CHECK(t3 == 1);
}

TEST_CASE("arc reduction deletes opposite pairs by min multiplicity") {
  auto [gone, b] = reduce_arcs({{0, 1, 1}, {1, 0, 1}});
  CHECK(gone.empty());
  CHECK(b == 1);

  auto [left, b2] = reduce_arcs({{0, 1, 3}, {1, 0, 1}});
  REQUIRE(left.size() == 1);
  CHECK(left[0] == Arc{0, 1, 2});
  CHECK(b2 == 1);

  auto [same, b3] = reduce_arcs({{0, 1, 1}});
  CHECK(same == std::vector<Arc>{{0, 1, 1}});
  CHECK(b3 == 0);
}

TEST_CASE("recomposition emits the triple gadgets") {
  MixedInstance one_arc;
  one_arc.vars.add("u");
  one_arc.vars.add("v");
  one_arc.arcs = {{0, 1, 1}};
  LoInstance out = recompose_kernel(one_arc, 0);
  REQUIRE(out.constraints.size() == 3);
  VarId omega = *out.vars.find("_omega");
  VarId u = *out.vars.find("u"), v = *out.vars.find("v");
  LoInstance expected;
  expected.vars = out.vars;
  expected.pi = PiSet(1u);
  expected.constraints = {{omega, u, v, 1}, {u, omega, v, 1}, {u, v, omega, 1}};
  expected.normalize();
  CHECK(out.constraints == expected.constraints);

  MixedInstance one_btw;
  one_btw.vars.add("u");
  one_btw.vars.add("v");
  one_btw.vars.add("w");
  one_btw.btws = {{1, 0, 2, 1}};
  LoInstance out2 = recompose_kernel(one_btw, 0);
  REQUIRE(out2.constraints.size() == 2);
  VarId u2 = *out2.vars.find("u"), v2 = *out2.vars.find("v"), w2 = *out2.vars.find("w");
  CHECK(((out2.constraints[0] == TripleConstraint{u2, v2, w2, 1} &&
          out2.constraints[1] == TripleConstraint{w2, v2, u2, 1}) ||
         (out2.constraints[1] == TripleConstraint{u2, v2, w2, 1} &&
          out2.constraints[0] == TripleConstraint{w2, v2, u2, 1})));
}

TEST_CASE("recomposition preserves the mixed deviation exactly") {
  std::mt19937_64 seeds(31);
  for (int trial = 0; trial < 50; ++trial) {
    MixedInstance mixed = gen_random_mixed(3 + static_cast<int>(seeds() % 3),
                                           static_cast<long long>(seeds() % 4),
                                           static_cast<long long>(seeds() % 3), seeds());
    MixedInstance reduced = reduce_mixed(mixed);
    LoInstance out = recompose_kernel(reduced, 0);
    CHECK(enumerate_max_deviation_mixed(reduced) == enumerate_max_deviation(out));
  }
}

TEST_CASE("recomposition doubles the deviation of the decomposed source") {
  std::mt19937_64 seeds(32);
  for (int trial = 0; trial < 20; ++trial) {
    RandSpec spec;
    spec.n = 3 + static_cast<int>(seeds() % 3);
    spec.m = 1 + static_cast<long long>(seeds() % 5);
    spec.pi = PiSet(1u);
    spec.seed = seeds();
    LoInstance inst = gen_random(spec);
    LoInstance recomposed = recompose_kernel(reduce_mixed(decompose_lo(inst)), 0);
    CHECK(max_dev_dp(inst).deviation * Rational(2) == max_dev_dp(recomposed).deviation);
  }
}

TEST_CASE("omega name collisions resolve deterministically") {
  MixedInstance tricky;
  tricky.vars.add("_omega");
  tricky.vars.add("x");
  tricky.arcs = {{0, 1, 1}};
  LoInstance out = recompose_kernel(tricky, 0);
  CHECK(out.vars.find("_omega1").has_value());
  CHECK(out.n() == 3);
}

TEST_CASE("kernelization on the worked examples") {
  LoInstance k1 = cycles_to_lo_instance(generate_g(1), 0);
  KernelResult base = kernelize_lo(k1);
  CHECK(base.verdict == KernelResult::Verdict::YES);  // k = 0 is always a yes

  LoInstance k0 = cycles_to_lo_instance(generate_g(0), 1);
  KernelResult reduced = kernelize_lo(k0);
  CHECK(reduced.verdict == KernelResult::Verdict::KERNEL);
  CHECK(reduced.stats.b == 6);
  CHECK(reduced.stats.t == 2);
  CHECK(reduced.stats.r == 0);
  CHECK(reduced.stats.s == 0);
  CHECK(reduced.kernel->total_mult() == 0);
  CHECK_FALSE(decide_above_average(*reduced.kernel));
  CHECK_FALSE(decide_above_average(k0));
}

TEST_CASE("kernelization preserves the answer on random instances") {
  std::mt19937_64 seeds(53);
  for (int trial = 0; trial < 20; ++trial) {
    RandSpec spec;
    spec.n = 6;
    spec.m = 8;
    spec.pi = PiSet(1u);
    spec.seed = seeds();
    LoInstance inst = gen_random(spec);
    for (long long k = 0; k <= 3; ++k) {
      inst.k = k;
      KernelResult result = kernelize_lo(inst);
      bool expected = decide_above_average(inst);
      if (result.verdict == KernelResult::Verdict::YES) CHECK(expected);
      else CHECK(decide_above_average(*result.kernel) == expected);
    }
  }
}

TEST_CASE("kernel config policy") {
  KernelConfig cfg;
  CHECK(cfg.c_constant == Rational(6530347008LL, 11));
  cfg.c_constant = Rational(1);
  LoInstance inst = uvw_instance(1u);
  inst.k = 1;
  CHECK_THROWS_AS(kernelize_lo(inst, cfg), Error);  // override not allowed
  cfg.allow_override = true;
  KernelResult result = kernelize_lo(inst, cfg);
  CHECK(result.verdict == KernelResult::Verdict::YES);  // r+s = 3 >= 1*1
  CHECK_THROWS_AS(kernelize_lo(uvw_instance(0b100001)), Error);  // wrong Pi
}

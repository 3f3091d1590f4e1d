#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tpcsp/decompose.hpp"
#include "tpcsp/hardgen.hpp"
#include "tpcsp/solver.hpp"

using namespace tpcsp;
using namespace tpcsp::testing;

namespace {

LoInstance single_triple() {
  LoInstance inst;
  inst.vars.add("u");
  inst.vars.add("v");
  inst.vars.add("w");
  inst.pi = PiSet(1u);
  inst.constraints = {{0, 1, 2, 1}};
  return inst;
}

}  // namespace

TEST_CASE("brute force on the worked examples") {
  DeviationReport report = max_dev_bruteforce(single_triple());
  CHECK(report.deviation == Rational(5, 6));
  CHECK(report.satisfied == 1);
  CHECK(report.witness->positions == std::vector<VarId>{0, 1, 2});

  LoInstance pair;
  pair.vars.add("a");
  pair.vars.add("b");
  pair.vars.add("c");
  pair.pi = PiSet(1u);
  pair.constraints = {{0, 1, 2, 1}, {2, 1, 0, 1}};
  pair.normalize();
  report = max_dev_bruteforce(pair);
  CHECK(report.satisfied == 1);
  CHECK(report.deviation == Rational(2, 3));
  CHECK(report.deviation == enumerate_max_deviation(pair));

  LoInstance k1 = cycles_to_lo_instance(generate_g(1), 0);
  CHECK(max_dev_bruteforce(k1).deviation.is_zero());

  SolverLimits tight;
  tight.max_brute_n = 5;
  LoInstance six = cycles_to_lo_instance(generate_g(1), 0);
  CHECK_THROWS_AS(max_dev_bruteforce(six, tight), Error);
}

TEST_CASE("brute force is deterministic across thread counts") {
  std::mt19937_64 seeds(7);
  for (int trial = 0; trial < 6; ++trial) {
    RandSpec spec;
    spec.n = 5 + static_cast<int>(seeds() % 2);
    spec.m = 3 + static_cast<long long>(seeds() % 5);
    spec.pi = PiSet(static_cast<unsigned>(1 + seeds() % 62));
    spec.seed = seeds();
    LoInstance inst = gen_random(spec);
    SolverLimits serial, parallel;
    parallel.threads = 4;
    DeviationReport a = max_dev_bruteforce(inst, serial);
    DeviationReport b = max_dev_bruteforce(inst, parallel);
    CHECK(a.deviation == b.deviation);
    CHECK(a.witness->positions == b.witness->positions);
  }
}

TEST_CASE("subset DP on mixed instances") {
  MixedInstance opposite;
  opposite.vars.add("u");
  opposite.vars.add("v");
  opposite.arcs = {{0, 1, 1}, {1, 0, 1}};
  auto [best, witness] = max_sat_mixed(opposite);
  CHECK(best == 1);
  CHECK(count_satisfied_mixed(opposite, witness) == 1);

  MixedInstance btw;
  btw.vars.add("u");
  btw.vars.add("v");
  btw.vars.add("w");
  btw.btws = {{1, 0, 2, 1}};
  auto [best2, witness2] = max_sat_mixed(btw);
  CHECK(best2 == 1);
  CHECK(count_satisfied_mixed(btw, witness2) == 1);

  MixedInstance decomposed = decompose_lo(single_triple());
  auto [best3, witness3] = max_sat_mixed(decomposed);
  CHECK(best3 == 3);
  CHECK(witness3.positions == std::vector<VarId>{0, 1, 2});

  SolverLimits tight;
  tight.max_dp_n = 3;
  MixedInstance big = gen_random_mixed(5, 3, 1, 1);
  CHECK_THROWS_AS(max_sat_mixed(big, tight), Error);
}

TEST_CASE("placement gains telescope to the satisfied count") {
  std::mt19937_64 seeds(99);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 4 + static_cast<int>(seeds() % 3);
    MixedInstance mixed = gen_random_mixed(n, 2 + static_cast<long long>(seeds() % 5),
                                           1 + static_cast<long long>(seeds() % 4), seeds());
    auto gain = [&](VarId x, const std::vector<bool>& placed) {
      long long g = 0;
      for (const auto& a : mixed.arcs)
        if (a.head == x && placed[static_cast<size_t>(a.tail)]) g += a.mult;
      for (const auto& b : mixed.btws)
        if (b.middle == x &&
            placed[static_cast<size_t>(b.outer_lo)] != placed[static_cast<size_t>(b.outer_hi)])
          g += b.mult;
      return g;
    };
    std::vector<VarId> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int shuffle = 0; shuffle < 4; ++shuffle) {
      for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[seeds() % i]);
      std::vector<bool> placed(static_cast<size_t>(n), false);
      long long total = 0;
      for (VarId x : order) {
        total += gain(x, placed);
        placed[static_cast<size_t>(x)] = true;
      }
      CHECK(total == count_satisfied_mixed(mixed, LinearOrdering{order}));
    }
  }
}

TEST_CASE("DP deviation solver matches the examples and the brute oracle") {
  DeviationReport report = max_dev_dp(single_triple());
  CHECK(report.satisfied == 1);
  CHECK(report.deviation == Rational(5, 6));

  LoInstance empty_pi = single_triple();
  empty_pi.pi = PiSet(0);
  report = max_dev_dp(empty_pi);
  CHECK(report.satisfied == 0);
  CHECK(report.deviation.is_zero());
  CHECK(report.witness->positions == std::vector<VarId>{0, 1, 2});

  LoInstance full_pi = single_triple();
  full_pi.pi = PiSet(63);
  report = max_dev_dp(full_pi);
  CHECK(report.satisfied == 1);
  CHECK(report.deviation.is_zero());

  RandSpec spec;
  spec.n = 7;
  spec.m = 10;
  spec.pi = PiSet(0b100001);
  spec.seed = 4242;
  LoInstance inst = gen_random(spec);
  CHECK(max_dev_dp(inst).deviation == max_dev_bruteforce(inst).deviation);
}

TEST_CASE("decide_above_average on the worked examples") {
  LoInstance yes = single_triple();
  yes.k = 0;
  CHECK(decide_above_average(yes));
  yes.k = 1;
  CHECK_FALSE(decide_above_average(yes));  // 5/6 < 1

  LoInstance k1 = cycles_to_lo_instance(generate_g(1), 1);
  CHECK_FALSE(decide_above_average(k1));

  SolverLimits impossible;
  impossible.max_brute_n = 3;
  impossible.max_dp_n = 3;
  LoInstance big = cycles_to_lo_instance(generate_g(1), 0);
  CHECK_THROWS_AS(decide_above_average(big, impossible), Error);
}

TEST_CASE("witnesses reproduce their satisfied counts") {
  std::mt19937_64 seeds(123);
  for (int trial = 0; trial < 15; ++trial) {
    RandSpec spec;
    spec.n = 3 + static_cast<int>(seeds() % 4);
    spec.m = 1 + static_cast<long long>(seeds() % 8);
    spec.pi = PiSet(static_cast<unsigned>(seeds() % 64));
    spec.seed = seeds();
    LoInstance inst = gen_random(spec);
    DeviationReport dp = max_dev_dp(inst);
    CHECK(count_satisfied(inst, *dp.witness) == dp.satisfied);
    DeviationReport brute = max_dev_bruteforce(inst);
    CHECK(count_satisfied(inst, *brute.witness) == brute.satisfied);
    CHECK(brute.witness->positions == dp.witness->positions);
  }
}

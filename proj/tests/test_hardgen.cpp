#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "tpcsp/hardgen.hpp"
#include "tpcsp/solver.hpp"

using namespace tpcsp;
using namespace tpcsp::testing;

TEST_CASE("base family is the doubly-oriented triangle") {
  HardFamily fam = generate_g(0);
  CHECK(fam.vars.names == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(fam.cycles.size() == 2);
  CHECK(fam.digraph.size() == 6);
  std::set<std::pair<VarId, VarId>> arcs;
  for (const auto& a : fam.digraph) arcs.insert({a.tail, a.head});
  CHECK(arcs == std::set<std::pair<VarId, VarId>>{
                    {0, 1}, {1, 2}, {2, 0}, {2, 1}, {1, 0}, {0, 2}});
  CHECK(check_symmetric_no_parallel(fam));
}

TEST_CASE("recursion doubles variables and follows the cycle recurrence") {
  HardFamily g1 = generate_g(1);
  CHECK(g1.vars.size() == 6);
  CHECK(g1.cycles.size() == 8);
  CHECK(g1.vars.find("x1'").has_value());
  CHECK(check_symmetric_no_parallel(g1));

  long long prev = 2;
  for (int level = 1; level <= 4; ++level) {
    HardFamily fam = generate_g(level);
    CHECK(fam.vars.size() == 3 * (1 << level));
    CHECK(static_cast<long long>(fam.cycles.size()) == 2 * prev + 4);
    prev = static_cast<long long>(fam.cycles.size());
    CHECK(check_symmetric_no_parallel(fam));
  }
  CHECK(generate_g(4).vars.size() == 48);
  CHECK_THROWS_AS(generate_g(-1), Error);
}

TEST_CASE("derived instances and their zero deviation") {
  LoInstance k0 = cycles_to_lo_instance(generate_g(0), 0);
  CHECK(k0.total_mult() == 6);
  // the six constraints are exactly all orderings of the three variables
  std::set<std::tuple<VarId, VarId, VarId>> triples;
  for (const auto& c : k0.constraints) triples.insert({c.v1, c.v2, c.v3});
  CHECK(triples.size() == 6);

  LoInstance k1 = cycles_to_lo_instance(generate_g(1), 0);
  CHECK(k1.total_mult() == 24);
  CHECK(max_dev_dp(k0).deviation.is_zero());
  CHECK(max_dev_dp(k1).deviation.is_zero());
}

TEST_CASE("asymmetry detection") {
  HardFamily fam = generate_g(0);
  CHECK(check_subset_asymmetry(fam, {0}));
  CHECK(check_subset_asymmetry(fam, {1}));

  // sampled proper nonempty cycle subsets at level 2
  HardFamily g2 = generate_g(2);
  std::mt19937_64 rng(2024);
  int n_cycles = static_cast<int>(g2.cycles.size());
  for (int trial = 0; trial < 1000; ++trial) {
    int keep = 1 + static_cast<int>(rng() % static_cast<uint64_t>(n_cycles - 1));
    std::vector<int> all(static_cast<size_t>(n_cycles));
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < keep; ++i) {
      int j = i + static_cast<int>(rng() % static_cast<uint64_t>(n_cycles - i));
      std::swap(all[static_cast<size_t>(i)], all[static_cast<size_t>(j)]);
    }
    all.resize(static_cast<size_t>(keep));
    CHECK(check_subset_asymmetry(g2, all));
  }
  CHECK_THROWS_AS(check_subset_asymmetry(fam, {}), Error);
  CHECK_THROWS_AS(check_subset_asymmetry(fam, {0, 1}), Error);
  CHECK_THROWS_AS(check_subset_asymmetry(fam, {0, 0}), Error);
  CHECK_THROWS_AS(check_subset_asymmetry(fam, {7}), Error);

  HardFamily lopsided;
  lopsided.vars.add("a");
  lopsided.vars.add("b");
  lopsided.vars.add("c");
  lopsided.cycles = {{0, 1, 2}};
  lopsided.digraph = {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}};
  CHECK_FALSE(check_symmetric_no_parallel(lopsided));
}

TEST_CASE("seeded generation is reproducible and well-formed") {
  RandSpec spec;
  spec.n = 5;
  spec.m = 7;
  spec.pi = PiSet(0b100001);
  spec.seed = 42;
  LoInstance a = gen_random(spec);
  LoInstance b = gen_random(spec);
  CHECK(a == b);
  CHECK(a.total_mult() == 7);
  validate(a);

  spec.m = 0;
  CHECK(gen_random(spec).constraints.empty());
  spec.n = 2;
  CHECK_THROWS_AS(gen_random(spec), Error);

  MixedInstance ma = gen_random_mixed(4, 3, 2, 9);
  MixedInstance mb = gen_random_mixed(4, 3, 2, 9);
  CHECK(ma == mb);
  CHECK(ma.r() == 3);
  CHECK(ma.s() == 2);
  validate(ma);
}

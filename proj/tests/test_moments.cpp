#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tpcsp/decompose.hpp"
#include "tpcsp/hardgen.hpp"
#include "tpcsp/moments.hpp"

using namespace tpcsp;
using namespace tpcsp::testing;

TEST_CASE("arc table values and mean") {
  CHECK(x_value(1, 1).is_zero());
  CHECK(x_value(0, 3) == Rational(1, 2));
  CHECK(x_value(3, 0) == Rational(-1, 2));
  Rational total(0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) total += x_value(a, b);
  CHECK(total.is_zero());
  CHECK_THROWS_AS(x_value(4, 0), Error);
}

TEST_CASE("betweenness table values, mean and square") {
  CHECK(y_value(2, 2, 2).is_zero());
  CHECK(y_value(0, 1, 2) == Rational(2, 3));
  CHECK(y_value(2, 1, 0) == Rational(2, 3));
  CHECK(y_value(1, 0, 1) == Rational(-1, 3));
  CHECK(y_value(0, 0, 2) == Rational(1, 6));
  Rational total(0), square(0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        total += y_value(a, b, c);
        square += y_value(a, b, c) * y_value(a, b, c);
      }
  CHECK(total.is_zero());
  CHECK(square == Rational(64) * Rational(11, 96));
}

TEST_CASE("triple table values and the halving identity") {
  CHECK(z_value(0, 1, 2) == Rational(5, 6));
  CHECK(z_value(0, 0, 2) == Rational(1, 3));
  CHECK(z_value(1, 0, 2) == Rational(-1, 6));
  Rational total(0), square(0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        Rational z = z_value(a, b, c);
        total += z;
        square += z * z;
        CHECK(z == (x_value(a, b) + x_value(b, c) + y_value(a, b, c)) * Rational(1, 2));
      }
  CHECK(total.is_zero());
  CHECK(square == Rational(64) * Rational(1, 12));
}

TEST_CASE("tables match the level-monotone ordering oracle") {
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        std::array<int, 3> levels{a, b, c};
        Rational px = conditional_probability(
            levels, [](const std::vector<int>& pos) { return pos[0] < pos[1]; });
        CHECK(px - Rational(1, 2) == x_value(a, b));
        Rational py = conditional_probability(levels, [](const std::vector<int>& pos) {
          return std::min(pos[0], pos[2]) < pos[1] && pos[1] < std::max(pos[0], pos[2]);
        });
        CHECK(py - Rational(1, 3) == y_value(a, b, c));
        Rational pz = conditional_probability(levels, [](const std::vector<int>& pos) {
          return pos[0] < pos[1] && pos[1] < pos[2];
        });
        CHECK(pz - Rational(1, 6) == z_value(a, b, c));
      }
    }
  }
}

TEST_CASE("second moments of the canonical pairs") {
  VarTable vars;
  vars.add("u");
  vars.add("x");
  vars.add("y");

  MixedInstance one_arc;
  one_arc.vars = vars;
  one_arc.arcs = {{0, 1, 1}};
  CHECK(second_moment(one_arc) == Rational(3, 16));

  MixedInstance one_btw;
  one_btw.vars = vars;
  one_btw.btws = {{1, 0, 2, 1}};
  CHECK(second_moment(one_btw) == Rational(11, 96));

  MixedInstance shared_tail;
  shared_tail.vars = vars;
  shared_tail.arcs = {{0, 1, 1}, {0, 2, 1}};
  CHECK(second_moment(shared_tail) == Rational(3, 8) + Rational(2) * Rational(5, 64));

  MixedInstance tail_head;
  tail_head.vars = vars;
  tail_head.arcs = {{0, 1, 1}, {2, 0, 1}};
  CHECK(second_moment(tail_head) == Rational(3, 8) - Rational(2) * Rational(5, 64));

  MixedInstance disjoint;
  disjoint.vars = vars;
  disjoint.vars.add("z");
  disjoint.arcs = {{0, 1, 1}, {2, 3, 1}};
  CHECK(second_moment(disjoint) == Rational(3, 8));

  MixedInstance empty;
  empty.vars = vars;
  CHECK(second_moment(empty).is_zero());
}

TEST_CASE("cross moments vanish identically") {
  VarTable vars;
  vars.add("u");
  vars.add("v");
  vars.add("w");
  MixedInstance mixed;
  mixed.vars = vars;
  mixed.arcs = {{0, 1, 1}};
  mixed.btws = {{1, 0, 2, 1}};
  CHECK(cross_moment_xy(mixed).is_zero());

  std::mt19937_64 seeds(3);
  for (int trial = 0; trial < 10; ++trial) {
    MixedInstance rnd = gen_random_mixed(3 + static_cast<int>(seeds() % 3),
                                         1 + static_cast<long long>(seeds() % 4),
                                         1 + static_cast<long long>(seeds() % 4), seeds());
    CHECK(cross_moment_xy(rnd).is_zero());
  }
  MixedInstance none;
  none.vars = vars;
  CHECK(cross_moment_xy(none).is_zero());
}

TEST_CASE("pairwise method equals full enumeration") {
  std::mt19937_64 seeds(8);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 3 + static_cast<int>(seeds() % 3);
    MixedInstance mixed = gen_random_mixed(n, 1 + static_cast<long long>(seeds() % 5),
                                           static_cast<long long>(seeds() % 4), seeds());
    CHECK(second_moment(mixed) == second_moment_full(mixed));
    RandSpec spec;
    spec.n = n;
    spec.m = 1 + static_cast<long long>(seeds() % 6);
    spec.pi = PiSet(1u);
    spec.seed = seeds();
    LoInstance inst = gen_random(spec);
    CHECK(second_moment(inst) == second_moment_full(inst));
  }
  RandSpec spec;
  spec.n = 6;
  spec.m = 3;
  spec.pi = PiSet(1u);
  spec.seed = 1;
  CHECK_THROWS_AS(second_moment_full(gen_random(spec)), Error);
}

TEST_CASE("polynomial encoding matches the table") {
  auto eps_of = [](int lu, int lv, int lw) {
    std::array<int, 6> eps{};
    auto u = eps_from_level(lu), v = eps_from_level(lv), w = eps_from_level(lw);
    eps = {u[0], u[1], v[0], v[1], w[0], w[1]};
    return eps;
  };
  CHECK(poly_z_eval(eps_of(0, 1, 2)) == Rational(5, 6));
  CHECK(poly_z_eval(eps_of(3, 3, 3)).is_zero());
  for (int lu = 0; lu < 4; ++lu)
    for (int lv = 0; lv < 4; ++lv)
      for (int lw = 0; lw < 4; ++lw)
        CHECK(poly_z_eval(eps_of(lu, lv, lw)) == z_value(lu, lv, lw));
  CHECK_THROWS_AS(poly_z_eval({0, 1, 1, 1, 1, 1}), Error);
  CHECK(level_from_eps(-1, -1) == 0);
  CHECK(level_from_eps(-1, 1) == 1);
  CHECK(level_from_eps(1, -1) == 2);
  CHECK(level_from_eps(1, 1) == 3);
}

TEST_CASE("fourth moments stay within the degree-6 bound") {
  LoInstance inst;
  inst.vars.add("u");
  inst.vars.add("v");
  inst.vars.add("w");
  inst.pi = PiSet(1u);
  inst.constraints = {{0, 1, 2, 1}};
  auto [e4, bound] = fourth_moment_check(inst);
  CHECK(e4 <= bound);
  CHECK(e4 > Rational(0));

  LoInstance empty = inst;
  empty.constraints.clear();
  auto [e4e, bounde] = fourth_moment_check(empty);
  CHECK(e4e.is_zero());
  CHECK(bounde.is_zero());

  LoInstance k0 = cycles_to_lo_instance(generate_g(0), 0);
  auto [e4k, boundk] = fourth_moment_check(k0);
  CHECK(e4k <= boundk);

  RandSpec spec;
  spec.n = 6;
  spec.m = 2;
  spec.pi = PiSet(1u);
  spec.seed = 2;
  CHECK_THROWS_AS(fourth_moment_check(gen_random(spec)), Error);
}

TEST_CASE("second-moment lower bound for decomposed triples") {
  LoInstance inst;
  inst.vars.add("u");
  inst.vars.add("v");
  inst.vars.add("w");
  inst.pi = PiSet(1u);
  inst.constraints = {{0, 1, 2, 1}};
  MixedInstance mixed = reduce_mixed(decompose_lo(inst));
  CHECK(second_moment(mixed) == Rational(1, 3));  // four times E[Z^2] = 1/12
  CHECK(check_lower_bound(mixed));

  MixedInstance empty;
  empty.vars.add("u");
  CHECK(check_lower_bound(empty));
}

TEST_CASE("observed betweenness pair expectations by sharing class") {
  // exact E[Y_i Y_j] per configuration, extracted from second moments and
  // frozen after enumeration; the aggregate lower bound rests on these
  auto cross = [](const BtwConstraint& a, const BtwConstraint& b, int n) {
    MixedInstance one, two, both;
    for (int i = 0; i < n; ++i) {
      std::string name = "v" + std::to_string(i);
      one.vars.add(name);
      two.vars.add(name);
      both.vars.add(name);
    }
    one.btws = {a};
    two.btws = {b};
    both.btws = {a, b};
    return (second_moment(both) - second_moment(one) - second_moment(two)) * Rational(1, 2);
  };
  CHECK(cross({1, 0, 2, 1}, {1, 0, 2, 1}, 3) == Rational(11, 96));    // identical
  CHECK(cross({1, 0, 2, 1}, {0, 1, 2, 1}, 3) == Rational(-11, 192));  // same set, other middle
  CHECK(cross({1, 0, 2, 1}, {1, 0, 3, 1}, 4) == Rational(1, 32));     // same middle + one outer
  CHECK(cross({1, 0, 2, 1}, {3, 0, 2, 1}, 4) == Rational(3, 64));     // same outer pair
  CHECK(cross({1, 0, 2, 1}, {0, 1, 3, 1}, 4) == Rational(-1, 128));   // middle/outer swapped
  CHECK(cross({1, 0, 2, 1}, {2, 1, 3, 1}, 4) == Rational(-1, 128));   // swapped, other side
  CHECK(cross({1, 0, 2, 1}, {1, 3, 4, 1}, 5) == Rational(1, 64));     // shared middle only
  CHECK(cross({1, 0, 2, 1}, {3, 1, 4, 1}, 5) == Rational(-1, 128));   // middle is an outer
  CHECK(cross({1, 0, 2, 1}, {3, 0, 4, 1}, 5) == Rational(1, 256));    // shared outer only
  CHECK(cross({1, 0, 2, 1}, {4, 3, 5, 1}, 6).is_zero());              // disjoint
}

TEST_CASE("arc pair classification") {
  CHECK(classify_arc_pair({0, 1, 1}, {0, 2, 1}).kind == PairClass::Kind::S1);
  CHECK(classify_arc_pair({1, 0, 1}, {2, 0, 1}).kind == PairClass::Kind::S1);
  CHECK(classify_arc_pair({0, 1, 1}, {2, 0, 1}).kind == PairClass::Kind::S2);
  CHECK(classify_arc_pair({0, 1, 1}, {1, 2, 1}).kind == PairClass::Kind::S2);
  CHECK(classify_arc_pair({0, 1, 1}, {0, 1, 5}).kind == PairClass::Kind::S3);
  CHECK(classify_arc_pair({0, 1, 1}, {2, 3, 1}).kind == PairClass::Kind::DISJOINT);
  CHECK_THROWS_AS(classify_arc_pair({0, 1, 1}, {1, 0, 1}), Error);
  CHECK(pair_cross_expectation(classify_arc_pair({0, 1, 1}, {0, 2, 1})) == Rational(5, 64));
  CHECK(pair_cross_expectation(classify_arc_pair({0, 1, 1}, {2, 0, 1})) == Rational(-5, 64));
  CHECK(pair_cross_expectation(classify_arc_pair({0, 1, 1}, {0, 1, 1})) == Rational(3, 16));
  CHECK(pair_cross_expectation(classify_arc_pair({0, 1, 1}, {2, 3, 1})).is_zero());
}

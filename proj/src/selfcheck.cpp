#include "tpcsp/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "tpcsp/decompose.hpp"
#include "tpcsp/hardgen.hpp"
#include "tpcsp/io.hpp"
#include "tpcsp/moments.hpp"
#include "tpcsp/solver.hpp"
#include "tpcsp/transforms.hpp"

namespace tpcsp::selfcheck {

namespace {

using Check = std::function<void(std::ostringstream&)>;

struct Failure {
  std::string what;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

CheckResult run_one(int criterion, const std::string& name, const Check& body) {
  CheckResult result;
  result.criterion = criterion;
  result.name = name;
  std::ostringstream detail;
  auto start = std::chrono::steady_clock::now();
  try {
    body(detail);
    result.pass = true;
    result.detail = detail.str();
  } catch (const Failure& f) {
    result.pass = false;
    result.detail = f.what;
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return result;
}

void for_each_ordering(int n, const std::function<void(const LinearOrdering&)>& fn) {
  std::vector<VarId> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  do {
    fn(LinearOrdering{order});
  } while (std::next_permutation(order.begin(), order.end()));
}

// deterministic pick of a (possibly non-representative) mask of a class
PiSet class_member(int cls, uint64_t salt) {
  std::vector<PiSet> orbit = pi_orbit(pi_class_representative(cls));
  return orbit[static_cast<size_t>(salt % orbit.size())];
}

// ---- criterion bodies ----------------------------------------------------

void c1_symmetry(std::ostringstream& detail) {
  constexpr unsigned kTable1[13] = {0b000001u, 0b000011u, 0b001101u, 0b111010u, 0b001001u,
                                    0b100001u, 0b001011u, 0b011001u, 0b110110u, 0b011110u,
                                    0b111110u, 0b000000u, 0b111111u};
  std::array<int, 13> class_sizes{};
  for (unsigned m = 0; m < 64; ++m) {
    int cls = canonical_pi_class(PiSet(m));
    expect(cls >= 0 && cls <= 12, "mask outside class range");
    ++class_sizes[static_cast<size_t>(cls)];
    for (const PiSet& member : pi_orbit(PiSet(m)))
      expect(canonical_pi_class(member) == cls, "class not constant on an orbit");
  }
  int nonempty = 0, total = 0;
  for (int c = 0; c < 13; ++c) {
    if (class_sizes[static_cast<size_t>(c)] > 0) ++nonempty;
    total += class_sizes[static_cast<size_t>(c)];
  }
  expect(nonempty == 13 && total == 64, "the 64 masks must split into exactly 13 classes");
  for (int c = 0; c < 13; ++c) {
    expect(pi_class_representative(c).mask == kTable1[static_cast<size_t>(c)],
           "representative drifted from the published membership");
    expect(canonical_pi_class(PiSet(kTable1[static_cast<size_t>(c)])) == c,
           "representative classifies to the wrong class");
  }
  detail << "13 classes over 64 masks";
}

void c2_oracle_equivalence(const Sizes& sizes, std::ostringstream& detail) {
  std::mt19937_64 seeds(20101ULL);
  for (int i = 0; i < sizes.oracle_instances; ++i) {
    int n = 3 + i % (sizes.oracle_max_n - 2);
    int cls = i % 13;
    RandSpec spec;
    spec.n = n;
    spec.m = 1 + static_cast<long long>(seeds() % 12);
    spec.pi = class_member(cls, seeds());
    spec.seed = seeds();
    LoInstance inst = gen_random(spec);
    SolverLimits limits;
    limits.threads = (i % 3 == 0) ? 2 : 1;  // exercise the parallel path too
    DeviationReport brute = max_dev_bruteforce(inst, limits);
    DeviationReport dp = max_dev_dp(inst);
    expect(brute.deviation == dp.deviation,
           "solver disagreement at instance " + std::to_string(i) + ": brute " +
               brute.deviation.str() + " vs dp " + dp.deviation.str());
    expect(brute.witness && dp.witness && *brute.witness == *dp.witness,
           "witness tie-break disagreement at instance " + std::to_string(i));
    expect(count_satisfied(inst, *dp.witness) == dp.satisfied,
           "witness does not reproduce the satisfied count");
  }
  detail << sizes.oracle_instances << " instances, brute force == subset DP";
}

void c3_decomposition_identity(const Sizes& sizes, std::ostringstream& detail) {
  std::mt19937_64 seeds(30303ULL);
  for (int i = 0; i < sizes.identity_instances; ++i) {
    RandSpec spec;
    spec.n = 3 + static_cast<int>(seeds() % 4);  // up to 6
    spec.m = 1 + static_cast<long long>(seeds() % 6);
    spec.pi = PiSet(1u);
    spec.seed = seeds();
    LoInstance inst = gen_random(spec);
    MixedInstance mixed = decompose_lo(inst);
    long long m = inst.total_mult();
    for_each_ordering(inst.n(), [&](const LinearOrdering& alpha) {
      long long sat = count_satisfied(inst, alpha);
      long long sat_mixed = count_satisfied_mixed(mixed, alpha);
      expect(2 * sat + m == sat_mixed, "per-ordering decomposition identity violated");
    });
  }
  detail << sizes.identity_instances << " instances, identity holds for every ordering";
}

void c4_reduction_rules(const Sizes& sizes, std::ostringstream& detail) {
  std::mt19937_64 seeds(40404ULL);
  for (int i = 0; i < sizes.rule_instances; ++i) {
    int n = 3 + static_cast<int>(seeds() % 4);
    MixedInstance mixed =
        gen_random_mixed(n, static_cast<long long>(seeds() % 7), static_cast<long long>(seeds() % 7), seeds());
    // force some opposite pairs and complete 3-sets into the mix
    if (mixed.n() >= 3 && i % 2 == 0) {
      mixed.arcs.push_back({0, 1, 1 + static_cast<long long>(seeds() % 2)});
      mixed.arcs.push_back({1, 0, 1});
      mixed.btws.push_back({0, 1, 2, 1});
      mixed.btws.push_back({1, 0, 2, 1});
      mixed.btws.push_back({2, 0, 1, 1});
      mixed.normalize();
    }
    long long b = 0, t = 0;
    MixedInstance reduced = reduce_mixed(mixed, &b, &t);
    Rational avg_before = mixed_average(mixed);
    Rational avg_after = mixed_average(reduced);
    for_each_ordering(n, [&](const LinearOrdering& alpha) {
      Rational dev_before = Rational(count_satisfied_mixed(mixed, alpha)) - avg_before;
      Rational dev_after = Rational(count_satisfied_mixed(reduced, alpha)) - avg_after;
      expect(dev_before == dev_after, "reduction changed a per-ordering deviation");
    });
    // order confluence: arcs-then-btws equals btws-then-arcs equals both
    auto [arcs_first, b1] = reduce_arcs(mixed.arcs);
    auto [btws_after, t1] = reduce_betweenness(mixed.btws);
    MixedInstance alt;
    alt.vars = mixed.vars;
    alt.arcs = arcs_first;
    alt.btws = btws_after;
    alt.normalize();
    expect(b1 == b && t1 == t && alt == reduced, "rule order changed the outcome");
    long long b2 = 0, t2 = 0;
    MixedInstance twice = reduce_mixed(reduced, &b2, &t2);
    expect(b2 == 0 && t2 == 0 && twice == reduced, "reduction is not idempotent");
  }
  detail << sizes.rule_instances << " instances, per-ordering preservation + confluence";
}

void c5_kernel_pipeline(const Sizes& sizes, std::ostringstream& detail) {
  std::mt19937_64 seeds(50505ULL);
  int checked = 0;
  for (int i = 0; i < sizes.kernel_instances; ++i) {
    RandSpec spec;
    spec.n = 3 + static_cast<int>(seeds() % 4);
    spec.m = 1 + static_cast<long long>(seeds() % 8);
    spec.pi = PiSet(1u);
    spec.seed = seeds();
    LoInstance inst = gen_random(spec);
    inst.k = static_cast<long long>(seeds() % 4);
    bool expected = decide_above_average(inst);
    KernelResult result = kernelize_lo(inst);
    if (result.verdict == KernelResult::Verdict::YES) {
      expect(expected, "YES verdict on a no-instance");
    } else {
      expect(result.kernel.has_value(), "KERNEL verdict without a kernel");
      expect(result.kernel->k == 2 * inst.k, "kernel parameter must double with the deviation");
      expect(decide_above_average(*result.kernel) == expected, "kernel changed the answer");
      Rational dev_in = max_dev_dp(inst).deviation;
      Rational dev_out = max_dev_dp(*result.kernel).deviation;
      expect(dev_in == dev_out * Rational(1, 2), "recomposition must exactly double the deviation");
      Rational surviving(result.stats.r + result.stats.s);
      expect(surviving < KernelConfig::default_c() * Rational(inst.k) * Rational(inst.k),
             "kernel emitted beyond the size threshold");
    }
    ++checked;
  }
  // lowered threshold: engineered yes-instances with r+s >= k^2 hit the YES rule
  for (long long k = 1; k <= 3; ++k) {
    long long copies = std::max(k * k, 2 * k);
    LoInstance inst;
    inst.vars.add("u");
    inst.vars.add("v");
    inst.vars.add("w");
    inst.pi = PiSet(1u);
    inst.k = k;
    inst.constraints.push_back({0, 1, 2, copies});
    inst.normalize();
    KernelConfig cfg;
    cfg.c_constant = Rational(1);
    cfg.allow_override = true;
    KernelResult result = kernelize_lo(inst, cfg);
    expect(result.verdict == KernelResult::Verdict::YES, "lowered threshold must fire");
    expect(decide_above_average(inst), "engineered instance must be a yes-instance");
  }
  {
    // below the lowered threshold the kernel branch still answers correctly
    LoInstance inst;
    inst.vars.add("u");
    inst.vars.add("v");
    inst.vars.add("w");
    inst.pi = PiSet(1u);
    inst.k = 3;
    inst.constraints.push_back({0, 1, 2, 1});
    inst.normalize();
    KernelConfig cfg;
    cfg.c_constant = Rational(1);
    cfg.allow_override = true;
    KernelResult result = kernelize_lo(inst, cfg);
    expect(result.verdict == KernelResult::Verdict::KERNEL, "threshold fired below r+s = k^2");
    expect(decide_above_average(*result.kernel) == decide_above_average(inst),
           "kernel answer drifted");
  }
  detail << checked << " instances + lowered-threshold branch";
}

bool mixed_source_yes(const MixedInstance& mixed, long long k) {
  auto [best, witness] = max_sat_mixed(mixed);
  (void)witness;
  return Rational(best) >= mixed_average(mixed) + Rational(k);
}

void c6_transform_web(const Sizes& sizes, std::ostringstream& detail) {
  const int per_op = sizes.transform_instances;
  std::mt19937_64 seeds(60606ULL);

  // hardness gadgets: maximum satisfiable counts must coincide
  for (int i = 0; i < per_op; ++i) {
    MixedInstance digraph =
        gen_random_mixed(3 + static_cast<int>(seeds() % 3), 1 + static_cast<long long>(seeds() % 4), 0, seeds());
    long long k = static_cast<long long>(seeds() % 3);
    auto [src_max, w0] = max_sat_mixed(digraph);
    (void)w0;
    TransformResult t1 = asd_to_pi1(digraph, k);
    expect(max_dev_dp(*t1.lo).satisfied == src_max, "class-1 gadget changed the maximum");
    TransformResult t2 = asd_to_pi2(digraph, k);
    expect(max_dev_dp(*t2.lo).satisfied == src_max, "class-2 gadget changed the maximum");
  }
  for (int i = 0; i < per_op; ++i) {
    RandSpec spec;
    spec.n = 3 + static_cast<int>(seeds() % 3);
    spec.m = 1 + static_cast<long long>(seeds() % 3);
    spec.pi = pi_class_representative(1);
    spec.seed = seeds();
    LoInstance pi1 = gen_random(spec);
    long long k = static_cast<long long>(seeds() % 3);
    TransformResult t3 = pi1_to_pi3(pi1, k);
    long long max1 = max_dev_dp(pi1).satisfied;
    long long max3 = max_dev_dp(*t3.lo).satisfied;
    expect(max3 == pi1.total_mult() + max1, "class-3 gadget broke the count identity");
    expect(t3.k_out == pi1.total_mult() + k, "class-3 threshold mismatch");
  }

  // above-average pipeline, checked stage by stage with exact solvers
  int trivially_no = 0;
  for (int i = 0; i < per_op; ++i) {
    MixedInstance raw =
        gen_random_mixed(3 + static_cast<int>(seeds() % 2), static_cast<long long>(seeds() % 3),
                         static_cast<long long>(seeds() % 3), seeds());
    MixedInstance reduced = reduce_mixed(raw);
    long long k = static_cast<long long>(seeds() % 3);
    bool src_yes = mixed_source_yes(reduced, k);
    TransformResult part1 = mixed_to_betweenness_aa(reduced, k);
    if (part1.kind == TransformResult::Kind::TriviallyNo) {
      expect(!src_yes, "trivially-no flagged on a yes-instance");
      ++trivially_no;
      continue;
    }
    bool b_yes = decide_above_average(*part1.lo);
    expect(b_yes == src_yes, "Betweenness step changed the answer");
    long long p = part1.notes.at("p");
    long long d = part1.notes.at("d");

    TransformResult part2 = betweenness_to_pi1_aa(*part1.lo, p, d);
    expect(decide_above_average(*part2.lo) == src_yes, "class-1 step changed the answer");
    TransformResult part3 = pi1_to_pi3_aa(*part2.lo, p, part2.k_out);
    expect(decide_above_average(*part3.lo) == src_yes, "class-3 step changed the answer");
    for (int j : {4, 8, 9, 10}) {
      TransformResult part4 = betweenness_to_pi_j(*part1.lo, j);
      expect(decide_above_average(*part4.lo) == src_yes,
             "class-" + std::to_string(j) + " step changed the answer");
    }
    TransformResult part5 = betweenness_to_pi6(*part1.lo, p, d);
    expect(decide_above_average(*part5.lo) == src_yes, "class-6 step changed the answer");
  }
  expect(trivially_no < per_op, "every pipeline source degenerated to trivially-no");

  // roundtrips through the arc reduction
  for (int cls : {2, 7}) {
    for (int i = 0; i < per_op; ++i) {
      RandSpec spec;
      spec.n = 3 + static_cast<int>(seeds() % 3);
      spec.m = 1 + static_cast<long long>(seeds() % 4);
      spec.pi = pi_class_representative(cls);
      spec.seed = seeds();
      LoInstance src = gen_random(spec);
      src.k = static_cast<long long>(seeds() % 3);
      TransformResult out =
          cls == 2 ? pi2_roundtrip_kernel(src, src.k) : pi7_roundtrip_kernel(src, src.k);
      expect(decide_above_average(*out.lo) == decide_above_average(src),
             "arc roundtrip changed the answer for class " + std::to_string(cls));
    }
  }

  // bikernel orchestration across source classes and targets
  for (int i = 0; i < per_op; ++i) {
    int src_cls = static_cast<int>(seeds() % 11);
    if (src_cls == 2 || src_cls == 7) src_cls = 5;
    RandSpec spec;
    spec.n = 3 + static_cast<int>(seeds() % 2);
    spec.m = 1 + static_cast<long long>(seeds() % 3);
    spec.pi = class_member(src_cls, seeds());
    spec.seed = seeds();
    LoInstance src = gen_random(spec);
    src.k = static_cast<long long>(seeds() % 3);
    int j = static_cast<int>(seeds() % 11);
    if (j == 2 || j == 7) j = 0;
    bool src_yes = decide_above_average(src);
    TransformResult out = bikernel(src, j);
    if (out.kind == TransformResult::Kind::TriviallyNo) {
      expect(!src_yes, "bikernel trivially-no on a yes-instance");
    } else {
      expect(decide_above_average(*out.lo) == src_yes, "bikernel changed the answer");
    }
  }

  // gadget satisfied-count maps, exhaustively over the gadget orderings
  {
    LoInstance btw_one;
    btw_one.vars.add("u");
    btw_one.vars.add("v");
    btw_one.vars.add("w");
    btw_one.pi = pi_class_representative(5);
    btw_one.k = 0;
    btw_one.constraints.push_back({0, 1, 2, 1});
    btw_one.normalize();

    TransformResult part2 = betweenness_to_pi1_aa(btw_one, 1, 0);
    expect(part2.lo->total_mult() == 6, "Betweenness gadget must emit 6 constraints");
    VarId zp = 3;  // added last
    for_each_ordering(3, [&](const LinearOrdering& base) {
      LinearOrdering alpha = base;
      alpha.positions.push_back(zp);
      bool sat = pi_satisfies({0, 1, 2, 1}, alpha, btw_one.pi);
      long long got = count_satisfied(*part2.lo, alpha);
      expect(got == (sat ? 3 : 2), "3-vs-2 gadget map violated");
    });

    const std::map<int, std::pair<long long, long long>> part4_map = {
        {4, {2, 1}}, {8, {2, 1}}, {9, {2, 1}}, {10, {4, 3}}};
    for (const auto& [j, counts] : part4_map) {
      TransformResult part4 = betweenness_to_pi_j(btw_one, j);
      for_each_ordering(3, [&](const LinearOrdering& alpha) {
        bool sat = pi_satisfies({0, 1, 2, 1}, alpha, btw_one.pi);
        long long got = count_satisfied(*part4.lo, alpha);
        expect(got == (sat ? counts.first : counts.second),
               "class-" + std::to_string(j) + " gadget map violated");
      });
    }

    TransformResult part5 = betweenness_to_pi6(btw_one, 1, 0);
    // the six constraints generated by the betweenness constraint alone,
    // evaluated with the two anchors at the end in either order
    LoInstance gadget_only = *part5.lo;
    gadget_only.constraints = {{0, 2, 1, 2}, {2, 0, 1, 2}, {4, 1, 0, 1}, {4, 1, 2, 1}};
    for (int anchor_order = 0; anchor_order < 2; ++anchor_order) {
      for_each_ordering(3, [&](const LinearOrdering& base) {
        LinearOrdering alpha = base;
        if (anchor_order == 0) {
          alpha.positions.push_back(4);  // _b
          alpha.positions.push_back(3);  // _a
        } else {
          alpha.positions.push_back(3);
          alpha.positions.push_back(4);
        }
        bool sat = pi_satisfies({0, 1, 2, 1}, alpha, pi_class_representative(5));
        long long got = count_satisfied(gadget_only, alpha);
        expect(got == (sat ? 5 : 2), "5-vs-2 gadget map violated");
      });
    }

    // class-7 triples vs their three arcs
    LoInstance tri;
    tri.vars = btw_one.vars;
    tri.pi = pi_class_representative(7);
    tri.constraints.push_back({0, 1, 2, 1});
    tri.normalize();
    MixedInstance arcs;
    arcs.vars = tri.vars;
    arcs.arcs = {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}};
    for_each_ordering(3, [&](const LinearOrdering& alpha) {
      bool sat = pi_satisfies({0, 1, 2, 1}, alpha, tri.pi);
      long long got = count_satisfied_mixed(arcs, alpha);
      expect(got == (sat ? 2 : 1), "2-of-3-arcs map violated");
    });

    // class-1 pair map under the reverse ordering
    LoInstance one1;
    one1.vars = btw_one.vars;
    one1.pi = pi_class_representative(1);
    one1.constraints.push_back({0, 1, 2, 1});
    one1.normalize();
    TransformResult t3 = pi1_to_pi3(one1, 0);
    for_each_ordering(3, [&](const LinearOrdering& alpha) {
      LinearOrdering rev = alpha;
      std::reverse(rev.positions.begin(), rev.positions.end());
      bool sat1 = pi_satisfies({0, 1, 2, 1}, alpha, one1.pi);
      long long got = count_satisfied(*t3.lo, rev);
      expect(got == (sat1 ? 2 : 1), "class-3 pair map violated");
    });
  }

  // the anchor constraints force y and z to the extremes
  {
    MixedInstance mixed;
    mixed.vars.add("u");
    mixed.vars.add("v");
    mixed.vars.add("w");
    mixed.arcs = {{0, 1, 1}, {1, 2, 1}};
    mixed.btws = {{1, 0, 2, 1}};
    mixed.normalize();
    MixedInstance reduced = reduce_mixed(mixed);
    TransformResult part1 = mixed_to_betweenness_aa(reduced, 1);
    expect(part1.kind == TransformResult::Kind::Lo, "engineered source must not be trivially-no");
    long long d = part1.notes.at("d");
    long long p = part1.notes.at("p");
    const LoInstance& target = *part1.lo;
    VarId y = *target.vars.find("_y");
    VarId z = *target.vars.find("_z");
    int witnesses = 0;
    for_each_ordering(target.n(), [&](const LinearOrdering& alpha) {
      long long falsified = p - count_satisfied(target, alpha);
      if (falsified > d) return;
      ++witnesses;
      VarId first = alpha.positions.front(), last = alpha.positions.back();
      expect((first == y && last == z) || (first == z && last == y),
             "an ordering met the target without the anchors at the extremes");
    });
    expect(witnesses > 0, "no ordering met the engineered target");
  }

  detail << per_op << " instances per operation + exhaustive gadget maps";
}

void c7_moment_constants(const Sizes& sizes, bool inject_fault, std::ostringstream& detail) {
  // conditional-ordering oracle for the three tables
  for (int lu = 0; lu < 4; ++lu) {
    for (int lv = 0; lv < 4; ++lv) {
      for (int lw = 0; lw < 4; ++lw) {
        int levels[3] = {lu, lv, lw};
        long long compatible = 0, arc_sat = 0, btw_sat = 0, tri_sat = 0;
        for_each_ordering(3, [&](const LinearOrdering& alpha) {
          std::vector<int> pos = alpha.position_of(3);
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
              if (pos[static_cast<size_t>(a)] < pos[static_cast<size_t>(b)] &&
                  levels[a] > levels[b])
                return;
          ++compatible;
          if (pos[0] < pos[1]) ++arc_sat;
          if (std::min(pos[0], pos[2]) < pos[1] && pos[1] < std::max(pos[0], pos[2])) ++btw_sat;
          if (pos[0] < pos[1] && pos[1] < pos[2]) ++tri_sat;
        });
        expect(compatible > 0, "no compatible ordering");
        expect(Rational(arc_sat, compatible) - Rational(1, 2) == x_value(lu, lv),
               "arc table mismatch against the conditional oracle");
        expect(Rational(btw_sat, compatible) - Rational(1, 3) == y_value(lu, lv, lw),
               "betweenness table mismatch against the conditional oracle");
        expect(Rational(tri_sat, compatible) - Rational(1, 6) == z_value(lu, lv, lw),
               "triple table mismatch against the conditional oracle");
      }
    }
  }

  VarTable uvw;
  uvw.add("u");
  uvw.add("x");
  uvw.add("y");
  Rational expected_x2 = inject_fault ? Rational(1, 4) : Rational(3, 16);
  {
    MixedInstance one_arc;
    one_arc.vars = uvw;
    one_arc.arcs = {{0, 1, 1}};
    expect(second_moment(one_arc) == expected_x2, "E[X_p^2] must equal 3/16");
  }
  {
    MixedInstance one_btw;
    one_btw.vars = uvw;
    one_btw.btws = {{1, 0, 2, 1}};
    expect(second_moment(one_btw) == Rational(11, 96), "E[Y_p^2] must equal 11/96");
  }
  {
    MixedInstance s1;
    s1.vars = uvw;
    s1.arcs = {{0, 1, 1}, {0, 2, 1}};
    Rational cross = (second_moment(s1) - Rational(3, 16) - Rational(3, 16)) * Rational(1, 2);
    expect(cross == Rational(5, 64), "shared-tail cross term must equal 5/64");
    expect(classify_arc_pair(s1.arcs[0], s1.arcs[1]).kind == PairClass::Kind::S1,
           "shared-tail pair misclassified");
    expect(pair_cross_expectation(classify_arc_pair(s1.arcs[0], s1.arcs[1])) == cross,
           "pair class expectation drifted");
  }
  {
    MixedInstance s2;
    s2.vars = uvw;
    s2.arcs = {{0, 1, 1}, {2, 0, 1}};
    Rational cross = (second_moment(s2) - Rational(3, 16) - Rational(3, 16)) * Rational(1, 2);
    expect(cross == Rational(-5, 64), "tail-head cross term must equal -5/64");
    expect(classify_arc_pair(s2.arcs[0], s2.arcs[1]).kind == PairClass::Kind::S2,
           "tail-head pair misclassified");
  }
  {
    MixedInstance s3;
    s3.vars = uvw;
    s3.arcs = {{0, 1, 2}};
    Rational cross = (second_moment(s3) - Rational(2) * Rational(3, 16)) * Rational(1, 2);
    expect(cross == Rational(3, 16), "identical-arc cross term must equal 3/16");
    expect(classify_arc_pair({0, 1, 1}, {0, 1, 1}).kind == PairClass::Kind::S3,
           "identical pair misclassified");
    expect(classify_arc_pair({0, 1, 1}, {2, 1, 1}).kind == PairClass::Kind::S1,
           "shared-head pair misclassified");
  }

  std::mt19937_64 seeds(70707ULL);
  for (int i = 0; i < sizes.moment_compare_instances; ++i) {
    int n = 3 + static_cast<int>(seeds() % 3);
    MixedInstance mixed = gen_random_mixed(n, 1 + static_cast<long long>(seeds() % 5),
                                           static_cast<long long>(seeds() % 4), seeds());
    expect(cross_moment_xy(mixed).is_zero(), "cross moment must vanish");
    expect(second_moment(mixed) == second_moment_full(mixed),
           "pairwise and full enumeration disagree on a mixed instance");
    RandSpec spec;
    spec.n = n;
    spec.m = 1 + static_cast<long long>(seeds() % 6);
    spec.pi = PiSet(1u);
    spec.seed = seeds();
    LoInstance inst = gen_random(spec);
    expect(second_moment(inst) == second_moment_full(inst),
           "pairwise and full enumeration disagree on a triple instance");
  }
  detail << "tables, pair constants, pairwise == full on "
         << sizes.moment_compare_instances << " instances";
}

void c8_lower_bounds(const Sizes& sizes, std::ostringstream& detail) {
  std::mt19937_64 seeds(80808ULL);
  for (int i = 0; i < sizes.lower_bound_instances; ++i) {
    int n = 4 + static_cast<int>(seeds() % 5);
    {
      MixedInstance arcs = gen_random_mixed(n, 2 + static_cast<long long>(seeds() % 11), 0, seeds());
      MixedInstance reduced = reduce_mixed(arcs);
      expect(second_moment(reduced) >= Rational(reduced.r(), 32),
             "arc second moment fell below r/32");
    }
    {
      MixedInstance btws = gen_random_mixed(n, 0, 2 + static_cast<long long>(seeds() % 11), seeds());
      MixedInstance reduced = reduce_mixed(btws);
      expect(second_moment(reduced) >= Rational(11 * reduced.s(), 768),
             "betweenness second moment fell below 11s/768");
    }
    {
      RandSpec spec;
      spec.n = n;
      spec.m = 1 + static_cast<long long>(seeds() % 10);
      spec.pi = PiSet(1u);
      spec.seed = seeds();
      MixedInstance reduced = reduce_mixed(decompose_lo(gen_random(spec)));
      expect(check_lower_bound(reduced), "mixed second moment fell below 11(r+s)/3072");
    }
  }
  detail << sizes.lower_bound_instances << " reduced instances per bound";
}

void c9_polynomial(std::ostringstream& detail) {
  for (int code = 0; code < 64; ++code) {
    std::array<int, 6> eps{};
    for (int i = 0; i < 6; ++i) eps[static_cast<size_t>(i)] = ((code >> (5 - i)) & 1) ? 1 : -1;
    int lu = level_from_eps(eps[0], eps[1]);
    int lv = level_from_eps(eps[2], eps[3]);
    int lw = level_from_eps(eps[4], eps[5]);
    expect(poly_z_eval(eps) == z_value(lu, lv, lw),
           "polynomial evaluation differs from the table");
  }
  std::array<Rational, 64> coef = poly_z_fourier();
  int max_degree = 0;
  for (int t = 0; t < 64; ++t)
    if (!coef[static_cast<size_t>(t)].is_zero())
      max_degree = std::max(max_degree, __builtin_popcount(static_cast<unsigned>(t)));
  expect(max_degree <= 6, "multilinear expansion has a monomial beyond degree 6");
  for (int code = 0; code < 64; ++code) {
    std::array<int, 6> eps{};
    for (int i = 0; i < 6; ++i) eps[static_cast<size_t>(i)] = ((code >> (5 - i)) & 1) ? 1 : -1;
    Rational recon(0);
    for (int t = 0; t < 64; ++t) {
      if (coef[static_cast<size_t>(t)].is_zero()) continue;
      int sign = 1;
      for (int i = 0; i < 6; ++i)
        if ((t >> i) & 1) sign *= eps[static_cast<size_t>(i)];
      recon += (sign > 0 ? coef[static_cast<size_t>(t)] : -coef[static_cast<size_t>(t)]);
    }
    expect(recon == poly_z_eval(eps), "multilinear expansion does not reconstruct the values");
  }
  // instance-level sum agrees with the decoded tables
  RandSpec spec;
  spec.n = 4;
  spec.m = 5;
  spec.pi = PiSet(1u);
  spec.seed = 909ULL;
  LoInstance inst = gen_random(spec);
  std::mt19937_64 rng(910ULL);
  for (int trial = 0; trial < 8; ++trial) {
    EpsVector eps;
    std::vector<int> levels;
    for (int v = 0; v < inst.n(); ++v) {
      int level = static_cast<int>(rng() % 4);
      levels.push_back(level);
      auto bits = eps_from_level(level);
      eps.bits.push_back(bits[0]);
      eps.bits.push_back(bits[1]);
    }
    Rational direct(0);
    for (const auto& c : inst.constraints)
      direct += Rational(c.mult) * z_value(levels[static_cast<size_t>(c.v1)],
                                           levels[static_cast<size_t>(c.v2)],
                                           levels[static_cast<size_t>(c.v3)]);
    expect(poly_z_instance(inst, eps) == direct, "instance polynomial sum drifted");
  }
  detail << "64 patterns + multilinear reconstruction, degree <= 6";
}

void c10_hypercontractivity(const Sizes& sizes, std::ostringstream& detail) {
  std::mt19937_64 seeds(101010ULL);
  auto assert_holds = [&](const LoInstance& inst) {
    auto [e4, bound] = fourth_moment_check(inst);
    expect(e4 <= bound, "fourth moment exceeded 9^6 E[Z^2]^2");
  };
  for (int i = 0; i < sizes.hyper_instances; ++i) {
    RandSpec spec;
    spec.n = 3 + static_cast<int>(seeds() % 3);
    spec.m = 1 + static_cast<long long>(seeds() % 10);
    spec.pi = PiSet(1u);
    spec.seed = seeds();
    assert_holds(gen_random(spec));
  }
  LoInstance empty;
  empty.vars.add("u");
  empty.vars.add("v");
  empty.vars.add("w");
  empty.pi = PiSet(1u);
  auto [e4, bound] = fourth_moment_check(empty);
  expect(e4.is_zero() && bound.is_zero(), "empty instance must give 0 <= 0");
  assert_holds(cycles_to_lo_instance(generate_g(0), 0));
  detail << sizes.hyper_instances << " instances by full enumeration";
}

void c11_hard_family(const Sizes& sizes, std::ostringstream& detail) {
  long long prev_cycles = 0;
  for (int level = 0; level <= sizes.family_max_level; ++level) {
    HardFamily fam = generate_g(level);
    expect(fam.vars.size() == 3 * (1 << level), "family size drifted");
    expect(check_symmetric_no_parallel(fam), "family digraph must be symmetric without parallels");
    long long cycles = static_cast<long long>(fam.cycles.size());
    if (level == 0) expect(cycles == 2, "level 0 must hold two cycles");
    else expect(cycles == 2 * prev_cycles + 4, "cycle recurrence violated");
    prev_cycles = cycles;
  }

  for (int level : {0, 1}) {
    LoInstance k_inst = cycles_to_lo_instance(generate_g(level), 0);
    expect(max_dev_dp(k_inst).deviation.is_zero(),
           "level " + std::to_string(level) + " instance must have zero deviation");
    if (level == 0)
      expect(max_dev_bruteforce(k_inst).deviation.is_zero(), "brute force disagrees at level 0");
  }

  HardFamily fam1 = generate_g(1);
  LoInstance k1 = cycles_to_lo_instance(fam1, 0);
  {
    MixedInstance reduced = reduce_mixed(decompose_lo(k1));
    expect(reduced.arcs.empty() && reduced.btws.empty(),
           "the normal rules must delete the level-1 instance entirely");
  }

  // all cycle-closed proper nonempty subsets
  int n_cycles = static_cast<int>(fam1.cycles.size());
  for (unsigned mask = 1; mask + 1 < (1u << n_cycles); ++mask) {
    std::vector<int> chosen;
    for (int i = 0; i < n_cycles; ++i)
      if ((mask >> i) & 1) chosen.push_back(i);
    expect(check_subset_asymmetry(fam1, chosen), "a proper cycle subset came out symmetric");
    HardFamily sub = fam1;
    sub.cycles.clear();
    for (int i : chosen) sub.cycles.push_back(fam1.cycles[static_cast<size_t>(i)]);
    LoInstance inst = cycles_to_lo_instance(sub, 0);
    long long best = max_dev_dp(inst).satisfied;
    expect(Rational(best) > Rational(inst.total_mult(), 6),
           "a cycle-closed subset failed the strict bound");
  }

  // random constraint subsets of the level-1 instance
  std::mt19937_64 rng(111111ULL);
  size_t total = k1.constraints.size();
  for (int trial = 0; trial < sizes.random_subsets; ++trial) {
    size_t keep = 1 + rng() % (total - 1);
    std::vector<size_t> idx(total);
    std::iota(idx.begin(), idx.end(), 0);
    for (size_t i = 0; i < keep; ++i) {
      size_t j = i + rng() % (total - i);
      std::swap(idx[i], idx[j]);
    }
    LoInstance sub;
    sub.vars = k1.vars;
    sub.pi = k1.pi;
    for (size_t i = 0; i < keep; ++i) sub.constraints.push_back(k1.constraints[idx[i]]);
    sub.normalize();
    long long best = max_dev_dp(sub).satisfied;
    expect(Rational(best) > Rational(sub.total_mult(), 6),
           "a random constraint subset failed the strict bound");
  }
  detail << "levels 0.." << sizes.family_max_level << ", 254 cycle-closed + "
         << sizes.random_subsets << " random subsets";
}

void c12_roundtrip(const Sizes& sizes, std::ostringstream& detail) {
  // the file grammar defines variables by first appearance, so an isolated
  // variable has no file form; round-trips are exact on occurring variables
  auto restrict_lo = [](const LoInstance& inst) {
    LoInstance out;
    out.pi = inst.pi;
    out.k = inst.k;
    std::vector<VarId> remap(static_cast<size_t>(inst.n()), -1);
    for (const auto& c : inst.constraints)
      for (VarId v : {c.v1, c.v2, c.v3})
        if (remap[static_cast<size_t>(v)] < 0)
          remap[static_cast<size_t>(v)] = out.vars.add(inst.vars.name(v));
    for (const auto& c : inst.constraints)
      out.constraints.push_back({remap[static_cast<size_t>(c.v1)], remap[static_cast<size_t>(c.v2)],
                                 remap[static_cast<size_t>(c.v3)], c.mult});
    out.normalize();
    return out;
  };
  auto restrict_mixed = [](const MixedInstance& mixed) {
    MixedInstance out;
    std::vector<VarId> remap(static_cast<size_t>(mixed.n()), -1);
    auto map = [&](VarId v) {
      if (remap[static_cast<size_t>(v)] < 0)
        remap[static_cast<size_t>(v)] = out.vars.add(mixed.vars.name(v));
      return remap[static_cast<size_t>(v)];
    };
    for (const auto& a : mixed.arcs) {
      VarId tail = map(a.tail), head = map(a.head);
      out.arcs.push_back({tail, head, a.mult});
    }
    for (const auto& b : mixed.btws) {
      VarId mid = map(b.middle), lo = map(b.outer_lo), hi = map(b.outer_hi);
      out.btws.push_back({mid, std::min(lo, hi), std::max(lo, hi), b.mult});
    }
    out.normalize();
    return out;
  };

  std::mt19937_64 seeds(121212ULL);
  for (int i = 0; i < sizes.roundtrip_instances; ++i) {
    RandSpec spec;
    spec.n = 3 + static_cast<int>(seeds() % 5);
    spec.m = 1 + static_cast<long long>(seeds() % 9);
    spec.pi = class_member(static_cast<int>(seeds() % 11), seeds());
    spec.seed = seeds();
    LoInstance inst = restrict_lo(gen_random(spec));
    inst.k = static_cast<long long>(seeds() % 4);
    std::string text = serialize(inst);
    expect(text == serialize(inst), "serialization must be deterministic");
    ParsedFile back = parse_instance_text(text);
    expect(back.is_lo() && semantically_equal(back.lo(), inst),
           "triple instance failed the round-trip");
    MixedInstance mixed =
        restrict_mixed(gen_random_mixed(spec.n, 1 + static_cast<long long>(seeds() % 5),
                                        static_cast<long long>(seeds() % 5), seeds()));
    long long k = static_cast<long long>(seeds() % 4);
    ParsedFile mixed_back = parse_instance_text(serialize(mixed, k));
    expect(!mixed_back.is_lo() && semantically_equal(mixed_back.mixed(), mixed) &&
               mixed_back.k == k,
           "mixed instance failed the round-trip");
  }
  // an instance that exercises the reserved-name machinery
  {
    RandSpec spec;
    spec.n = 4;
    spec.m = 5;
    spec.pi = PiSet(1u);
    spec.seed = 789ULL;
    LoInstance inst = gen_random(spec);
    inst.k = 1;
    KernelResult kernel = kernelize_lo(inst);
    expect(kernel.verdict == KernelResult::Verdict::KERNEL, "small instance must kernelize");
    ParsedFile back = parse_instance_text(serialize(*kernel.kernel));
    expect(back.is_lo() && semantically_equal(back.lo(), restrict_lo(*kernel.kernel)),
           "kernel output failed the round-trip");
  }
  detail << sizes.roundtrip_instances << " generated instances, parse o serialize = id";
}

}  // namespace

Sizes full_sizes() { return Sizes{}; }

Sizes reduced_sizes() {
  Sizes s;
  s.oracle_instances = 40;
  s.oracle_max_n = 6;
  s.identity_instances = 12;
  s.rule_instances = 12;
  s.kernel_instances = 12;
  s.transform_instances = 4;
  s.moment_compare_instances = 6;
  s.lower_bound_instances = 20;
  s.hyper_instances = 10;
  s.family_max_level = 4;
  s.random_subsets = 150;
  s.roundtrip_instances = 10;
  return s;
}

std::vector<CheckResult> run_selfcheck(const Options& options) {
  const Sizes& sz = options.sizes;
  std::vector<CheckResult> results;
  results.push_back(run_one(1, "symmetry-dichotomy", c1_symmetry));
  results.push_back(run_one(2, "oracle-equivalence",
                            [&](std::ostringstream& d) { c2_oracle_equivalence(sz, d); }));
  results.push_back(run_one(3, "decomposition-identity",
                            [&](std::ostringstream& d) { c3_decomposition_identity(sz, d); }));
  results.push_back(
      run_one(4, "reduction-rules", [&](std::ostringstream& d) { c4_reduction_rules(sz, d); }));
  results.push_back(
      run_one(5, "kernel-pipeline", [&](std::ostringstream& d) { c5_kernel_pipeline(sz, d); }));
  results.push_back(
      run_one(6, "transform-web", [&](std::ostringstream& d) { c6_transform_web(sz, d); }));
  results.push_back(run_one(7, "moment-constants", [&](std::ostringstream& d) {
    c7_moment_constants(sz, options.inject_table_fault, d);
  }));
  results.push_back(
      run_one(8, "lower-bounds", [&](std::ostringstream& d) { c8_lower_bounds(sz, d); }));
  results.push_back(run_one(9, "polynomial-encoding", c9_polynomial));
  results.push_back(run_one(10, "hypercontractivity",
                            [&](std::ostringstream& d) { c10_hypercontractivity(sz, d); }));
  results.push_back(
      run_one(11, "hard-family", [&](std::ostringstream& d) { c11_hard_family(sz, d); }));
  results.push_back(run_one(12, "file-roundtrip", [&](std::ostringstream& d) { c12_roundtrip(sz, d); }));
  return results;
}

}  // namespace tpcsp::selfcheck

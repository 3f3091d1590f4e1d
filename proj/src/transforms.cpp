#include "tpcsp/transforms.hpp"

#include <algorithm>

#include "tpcsp/perm.hpp"

namespace tpcsp {

namespace {

LoInstance lo_shell(const VarTable& vars, int pi_class, long long k) {
  LoInstance out;
  out.vars = vars;
  out.pi = pi_class_representative(pi_class);
  out.k = k;
  return out;
}

void require_class(const LoInstance& inst, int cls, const char* what) {
  if (inst.pi != pi_class_representative(cls))
    fail(Errc::precondition, std::string(what) + " expects a class-" + std::to_string(cls) +
                                 " instance in representative encoding");
}

void require_digraph(const MixedInstance& digraph) {
  validate(digraph);
  if (!digraph.btws.empty())
    fail(Errc::invalid_argument, "expected a digraph (no betweenness constraints)");
}

// variables occurring in some arc or betweenness constraint, original order
std::vector<VarId> occurring_vars(const MixedInstance& mixed) {
  std::vector<bool> used(static_cast<size_t>(mixed.n()), false);
  for (const auto& a : mixed.arcs)
    used[static_cast<size_t>(a.tail)] = used[static_cast<size_t>(a.head)] = true;
  for (const auto& b : mixed.btws)
    used[static_cast<size_t>(b.middle)] = used[static_cast<size_t>(b.outer_lo)] =
        used[static_cast<size_t>(b.outer_hi)] = true;
  std::vector<VarId> out;
  for (VarId v = 0; v < mixed.n(); ++v)
    if (used[static_cast<size_t>(v)]) out.push_back(v);
  return out;
}

long long ceil_div(long long num, long long den) {
  return (num + den - 1) / den;  // positive den
}

}  // namespace

TransformResult asd_to_pi1(const MixedInstance& digraph, long long k) {
  require_digraph(digraph);
  if (digraph.arcs.empty()) fail(Errc::precondition, "digraph must have at least one arc");
  if (k < 0) fail(Errc::invalid_argument, "k must be non-negative");
  LoInstance out = lo_shell(digraph.vars, 1, k);
  VarId z = out.vars.add(out.vars.fresh_name("_z"));
  for (const auto& a : digraph.arcs) out.constraints.push_back({a.tail, a.head, z, a.mult});
  out.normalize();
  TransformResult res;
  res.kind = TransformResult::Kind::Lo;
  res.lo = std::move(out);
  res.k_out = k;
  return res;
}

TransformResult asd_to_pi2(const MixedInstance& digraph, long long k) {
  require_digraph(digraph);
  if (k < 0) fail(Errc::invalid_argument, "k must be non-negative");
  LoInstance out = lo_shell(digraph.vars, 2, k);
  VarId z = out.vars.add(out.vars.fresh_name("_z"));
  for (const auto& a : digraph.arcs) out.constraints.push_back({z, a.tail, a.head, a.mult});
  out.normalize();
  TransformResult res;
  res.kind = TransformResult::Kind::Lo;
  res.lo = std::move(out);
  res.k_out = k;
  return res;
}

TransformResult pi1_to_pi3(const LoInstance& pi1_inst, long long k) {
  validate(pi1_inst);
  require_class(pi1_inst, 1, "pi1_to_pi3");
  if (k < 0) fail(Errc::invalid_argument, "k must be non-negative");
  long long m = pi1_inst.total_mult();
  LoInstance out = lo_shell(pi1_inst.vars, 3, m + k);
  for (const auto& c : pi1_inst.constraints) {
    out.constraints.push_back({c.v1, c.v2, c.v3, c.mult});
    out.constraints.push_back({c.v1, c.v3, c.v2, c.mult});
  }
  out.normalize();
  TransformResult res;
  res.kind = TransformResult::Kind::Lo;
  res.lo = std::move(out);
  res.k_out = m + k;
  return res;
}

TransformResult mixed_to_betweenness_aa(const MixedInstance& reduced, long long k) {
  validate(reduced);
  if (k < 0) fail(Errc::invalid_argument, "k must be non-negative");
  {
    long long b = 0, t = 0;
    reduce_mixed(reduced, &b, &t);
    if (b > 0 || t > 0)
      fail(Errc::precondition, "mixed instance must be reduced before the Betweenness step");
  }
  long long r = reduced.r(), s = reduced.s();
  long long d = (r + s) - ceil_div(3 * r + 2 * s + 6 * k, 6);

  TransformResult res;
  res.notes["r"] = r;
  res.notes["s"] = s;
  res.notes["d"] = d;
  if (d < 0) {
    // the target count exceeds r+s, so no ordering can reach it
    res.kind = TransformResult::Kind::TriviallyNo;
    return res;
  }

  std::vector<VarId> vstar = occurring_vars(reduced);
  LoInstance out;
  out.pi = pi_class_representative(5);
  std::vector<VarId> remap(static_cast<size_t>(reduced.n()), -1);
  for (VarId v : vstar) remap[static_cast<size_t>(v)] = out.vars.add(reduced.vars.name(v));
  VarId y = out.vars.add(out.vars.fresh_name("_y"));
  VarId z = out.vars.add(out.vars.fresh_name("_z"));

  for (const auto& b : reduced.btws)
    out.constraints.push_back({remap[static_cast<size_t>(b.outer_lo)],
                               remap[static_cast<size_t>(b.middle)],
                               remap[static_cast<size_t>(b.outer_hi)], b.mult});
  long long anchor_mult = r + s + 1;
  for (VarId v : vstar)
    out.constraints.push_back({y, remap[static_cast<size_t>(v)], z, anchor_mult});
  for (const auto& a : reduced.arcs)
    out.constraints.push_back({remap[static_cast<size_t>(a.tail)], remap[static_cast<size_t>(a.head)],
                               z, a.mult});

  long long p = out.total_mult();
  if (p != (static_cast<long long>(vstar.size()) + 1) * (r + s + 1) - 1)
    fail(Errc::invalid_instance, "unexpected constraint count in Betweenness construction");
  long long padding = (3 - p % 3) % 3;
  if (padding > 0 && vstar.empty())
    fail(Errc::invalid_instance, "padding requires an occurring variable");
  if (padding > 0)
    out.constraints.push_back({y, remap[static_cast<size_t>(vstar.front())], z, padding});
  p += padding;

  long long k_prime = 2 * p / 3 - d;
  out.k = k_prime;
  out.normalize();

  res.kind = TransformResult::Kind::Lo;
  res.lo = std::move(out);
  res.k_out = k_prime;
  res.notes["p"] = p;
  res.notes["k_prime"] = k_prime;
  return res;
}

TransformResult betweenness_to_pi1_aa(const LoInstance& b_inst, long long p, long long d) {
  validate(b_inst);
  require_class(b_inst, 5, "betweenness_to_pi1_aa");
  if (p != b_inst.total_mult())
    fail(Errc::precondition, "p must equal the Betweenness constraint count");
  if (d < 0) fail(Errc::invalid_argument, "d must be non-negative");

  LoInstance out = lo_shell(b_inst.vars, 1, p - d);
  VarId zp = out.vars.add(out.vars.fresh_name("_zp"));
  for (const auto& c : b_inst.constraints) {
    VarId u = c.v1, v = c.v2, w = c.v3;  // betweenness (v,{u,w})
    out.constraints.push_back({u, v, w, 2 * c.mult});
    out.constraints.push_back({w, u, v, 2 * c.mult});
    out.constraints.push_back({v, w, zp, c.mult});
    out.constraints.push_back({v, u, zp, c.mult});
  }
  out.normalize();

  TransformResult res;
  res.kind = TransformResult::Kind::Lo;
  res.lo = std::move(out);
  res.k_out = p - d;
  res.notes["p"] = p;
  res.notes["d"] = d;
  res.notes["k1"] = p - d;
  return res;
}

TransformResult pi1_to_pi3_aa(const LoInstance& c1_inst, long long p, long long k1) {
  validate(c1_inst);
  require_class(c1_inst, 1, "pi1_to_pi3_aa");
  if (c1_inst.total_mult() != 6 * p)
    fail(Errc::precondition, "the class-1 instance must carry 6p constraints");
  if (k1 < 0) fail(Errc::invalid_argument, "k1 must be non-negative");

  LoInstance out = lo_shell(c1_inst.vars, 3, k1);
  for (const auto& c : c1_inst.constraints) {
    out.constraints.push_back({c.v1, c.v2, c.v3, c.mult});
    out.constraints.push_back({c.v1, c.v3, c.v2, c.mult});
  }
  out.normalize();

  TransformResult res;
  res.kind = TransformResult::Kind::Lo;
  res.lo = std::move(out);
  res.k_out = k1;
  res.notes["p"] = p;
  res.notes["k3"] = k1;
  res.notes["q"] = 2 * p + k1;
  return res;
}

TransformResult betweenness_to_pi_j(const LoInstance& b_inst, int j) {
  validate(b_inst);
  require_class(b_inst, 5, "betweenness_to_pi_j");
  if (j != 4 && j != 8 && j != 9 && j != 10)
    fail(Errc::invalid_argument, "gadget target must be one of classes 4, 8, 9, 10");

  LoInstance out = lo_shell(b_inst.vars, j, b_inst.k);
  for (const auto& c : b_inst.constraints) {
    VarId u = c.v1, v = c.v2, w = c.v3;  // betweenness (v,{u,w})
    switch (j) {
      case 4:
        out.constraints.push_back({u, v, w, c.mult});
        out.constraints.push_back({u, w, v, c.mult});
        out.constraints.push_back({w, u, v, c.mult});
        out.constraints.push_back({w, v, u, c.mult});
        break;
      case 8:
        out.constraints.push_back({v, w, u, c.mult});
        out.constraints.push_back({v, u, w, c.mult});
        break;
      case 9:
        out.constraints.push_back({v, u, w, c.mult});
        out.constraints.push_back({u, w, v, c.mult});
        break;
      case 10:
        out.constraints.push_back({v, u, w, c.mult});
        out.constraints.push_back({v, w, u, c.mult});
        out.constraints.push_back({u, w, v, c.mult});
        out.constraints.push_back({w, u, v, c.mult});
        break;
      default: break;
    }
  }
  out.normalize();

  TransformResult res;
  res.kind = TransformResult::Kind::Lo;
  res.lo = std::move(out);
  res.k_out = b_inst.k;
  res.notes["k_out"] = b_inst.k;
  return res;
}

TransformResult betweenness_to_pi6(const LoInstance& b_inst, long long p, long long d) {
  validate(b_inst);
  require_class(b_inst, 5, "betweenness_to_pi6");
  if (p != b_inst.total_mult())
    fail(Errc::precondition, "p must equal the Betweenness constraint count");
  if (d < 0) fail(Errc::invalid_argument, "d must be non-negative");

  long long nv = b_inst.n();
  long long k6 = (6 * p + 1) * nv + (2 * p - 3 * d);
  LoInstance out = lo_shell(b_inst.vars, 6, k6);
  VarId a = out.vars.add(out.vars.fresh_name("_a"));
  VarId b = out.vars.add(out.vars.fresh_name("_b"));
  for (VarId x = 0; x < b_inst.n(); ++x) {
    out.constraints.push_back({x, b, a, 6 * p + 1});
    out.constraints.push_back({x, a, b, 6 * p + 1});
  }
  for (const auto& c : b_inst.constraints) {
    VarId u = c.v1, v = c.v2, w = c.v3;  // betweenness (v,{u,w})
    out.constraints.push_back({u, w, v, 2 * c.mult});
    out.constraints.push_back({w, u, v, 2 * c.mult});
    out.constraints.push_back({b, v, u, c.mult});
    out.constraints.push_back({b, v, w, c.mult});
  }
  out.normalize();

  TransformResult res;
  res.kind = TransformResult::Kind::Lo;
  res.lo = std::move(out);
  res.k_out = k6;
  res.notes["p"] = p;
  res.notes["d"] = d;
  res.notes["k6"] = k6;
  return res;
}

namespace {

TransformResult roundtrip_via_arcs(const LoInstance& inst, long long k, int cls) {
  // class-2 triples satisfy via their (v2,v3) order, class-7 triples via the
  // cyclic orientation of all three arcs
  MixedInstance digraph;
  digraph.vars = inst.vars;
  for (const auto& c : inst.constraints) {
    if (cls == 2) {
      digraph.arcs.push_back({c.v2, c.v3, c.mult});
    } else {
      digraph.arcs.push_back({c.v1, c.v2, c.mult});
      digraph.arcs.push_back({c.v2, c.v3, c.mult});
      digraph.arcs.push_back({c.v3, c.v1, c.mult});
    }
  }
  digraph.normalize();
  auto [arcs, b] = reduce_arcs(digraph.arcs);

  MixedInstance reduced;
  reduced.vars = digraph.vars;
  reduced.arcs = std::move(arcs);
  std::vector<VarId> keep = occurring_vars(reduced);

  LoInstance out;
  out.pi = pi_class_representative(cls);
  out.k = k;
  std::vector<VarId> remap(static_cast<size_t>(reduced.n()), -1);
  for (VarId v : keep) remap[static_cast<size_t>(v)] = out.vars.add(reduced.vars.name(v));
  VarId z = out.vars.add(out.vars.fresh_name("_z"));
  for (const auto& arc : reduced.arcs) {
    VarId u = remap[static_cast<size_t>(arc.tail)], v = remap[static_cast<size_t>(arc.head)];
    if (cls == 2) out.constraints.push_back({z, u, v, arc.mult});
    else out.constraints.push_back({u, v, z, arc.mult});
  }
  out.normalize();

  TransformResult res;
  res.kind = TransformResult::Kind::Lo;
  res.lo = std::move(out);
  res.k_out = k;
  res.notes["b"] = b;
  res.notes["arcs"] = reduced.r();
  return res;
}

}  // namespace

TransformResult pi2_roundtrip_kernel(const LoInstance& pi2_inst, long long k) {
  validate(pi2_inst);
  require_class(pi2_inst, 2, "pi2_roundtrip_kernel");
  if (k < 0) fail(Errc::invalid_argument, "k must be non-negative");
  return roundtrip_via_arcs(pi2_inst, k, 2);
}

TransformResult pi7_roundtrip_kernel(const LoInstance& pi7_inst, long long k) {
  validate(pi7_inst);
  require_class(pi7_inst, 7, "pi7_roundtrip_kernel");
  if (k < 0) fail(Errc::invalid_argument, "k must be non-negative");
  return roundtrip_via_arcs(pi7_inst, k, 7);
}

TransformResult transform_reduced_mixed(const MixedInstance& reduced, long long k, int j) {
  if (j == 0) {
    // recomposition preserves the mixed deviation exactly, k carries over
    TransformResult res;
    res.kind = TransformResult::Kind::Lo;
    res.lo = recompose_kernel(reduced, k);
    res.k_out = k;
    return res;
  }
  TransformResult part1 = mixed_to_betweenness_aa(reduced, k);
  if (part1.kind == TransformResult::Kind::TriviallyNo || j == 5) return part1;
  long long p = part1.notes.at("p");
  long long d = part1.notes.at("d");

  TransformResult out;
  switch (j) {
    case 1: out = betweenness_to_pi1_aa(*part1.lo, p, d); break;
    case 3: {
      TransformResult part2 = betweenness_to_pi1_aa(*part1.lo, p, d);
      out = pi1_to_pi3_aa(*part2.lo, p, part2.k_out);
      break;
    }
    case 4:
    case 8:
    case 9:
    case 10: out = betweenness_to_pi_j(*part1.lo, j); break;
    case 6: out = betweenness_to_pi6(*part1.lo, p, d); break;
    default:
      fail(Errc::invalid_argument,
           "no reduction from general instances into class " + std::to_string(j));
  }
  out.notes.insert(part1.notes.begin(), part1.notes.end());
  return out;
}

TransformResult bikernel(const LoInstance& inst, int j) {
  validate(inst);
  if (j < 0 || j > 10) fail(Errc::invalid_argument, "target class must lie in [0,10]");
  if (inst.pi.empty() || inst.pi.full())
    fail(Errc::invalid_argument, "the empty set and full S3 are solvable in polynomial time");

  if (j == 2 || j == 7) {
    if (inst.pi != pi_class_representative(j))
      fail(Errc::invalid_argument,
           "classes 2 and 7 are reachable only from themselves (via the arc roundtrip)");
    return j == 2 ? pi2_roundtrip_kernel(inst, inst.k) : pi7_roundtrip_kernel(inst, inst.k);
  }

  LoInstance lo0 = to_linear_ordering(inst);
  MixedInstance mixed = decompose_lo(lo0);
  long long b = 0, t = 0;
  MixedInstance reduced = reduce_mixed(mixed, &b, &t);
  // triples split in half across the mixed constraints, so the equivalent
  // mixed question carries parameter 2k
  TransformResult res = transform_reduced_mixed(reduced, 2 * inst.k, j);
  res.notes["b"] = b;
  res.notes["t"] = t;
  return res;
}

}  // namespace tpcsp

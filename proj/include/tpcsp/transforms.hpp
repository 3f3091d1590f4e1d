#pragma once

#include <map>
#include <optional>
#include <string>

#include "tpcsp/decompose.hpp"
#include "tpcsp/instance.hpp"

namespace tpcsp {

// Output of one reduction step: either an instance of the target problem
// with its parameter, or the flag that the source is trivially a "no"
// (the requested count exceeds what any ordering can satisfy).
struct TransformResult {
  enum class Kind { Lo, Mixed, TriviallyNo };
  Kind kind = Kind::Lo;
  std::optional<LoInstance> lo;
  std::optional<MixedInstance> mixed;
  long long k_out = 0;
  std::map<std::string, long long> notes;  // derived quantities: p, d, q, ...
};

// --- hardness gadgets (threshold semantics: "k arcs/constraints satisfiable") ---

// Arc (u,v) becomes the class-1 constraint (u < min{v,z}) for one new
// variable z; the maximum satisfiable counts coincide.
TransformResult asd_to_pi1(const MixedInstance& digraph, long long k);

// Arc (v,w) becomes the class-2 constraint (z, v < w); counts coincide.
TransformResult asd_to_pi2(const MixedInstance& digraph, long long k);

// Each class-1 constraint (u < min{v,w}) becomes the class-3 pair
// (max{u,v} !< w), (max{u,w} !< v); threshold k becomes m + k via the
// reverse ordering.
TransformResult pi1_to_pi3(const LoInstance& pi1_inst, long long k);

// --- above-average reductions through Betweenness ---

// Part 1: reduced mixed instance -> Betweenness-AA. Adds y,z, (r+s+1)
// anchor copies (x,{y,z}) per occurring variable, one (v,{u,z}) per arc,
// pads to p % 3 == 0, and sets k' = 2p/3 - d with
// d = (r+s) - ceil(r/2 + s/3 + k). d < 0 yields TriviallyNo.
TransformResult mixed_to_betweenness_aa(const MixedInstance& reduced, long long k);

// Part 2: Betweenness-AA -> class-1-AA with 6 constraints per betweenness
// constraint and k_1 = p - d.
TransformResult betweenness_to_pi1_aa(const LoInstance& b_inst, long long p, long long d);

// Part 3: class-1-AA -> class-3-AA, two gadget constraints each, k_3 = k_1.
TransformResult pi1_to_pi3_aa(const LoInstance& c1_inst, long long p, long long k1);

// Part 4: Betweenness-AA -> class j in {4,8,9,10}; k_j equals the input's k.
TransformResult betweenness_to_pi_j(const LoInstance& b_inst, int j);

// Part 5: Betweenness-AA -> class-6-AA with two anchor variables and
// k_6 = (6p+1)|V'| + (2p - 3d).
TransformResult betweenness_to_pi6(const LoInstance& b_inst, long long p, long long d);

// --- the two classes that go through Acyclic Subdigraph ---

// (u, v < w) -> arc (v,w) -> opposite-pair reduction -> (z, v < w).
TransformResult pi2_roundtrip_kernel(const LoInstance& pi2_inst, long long k);

// <u,v,w> -> arcs (u,v),(v,w),(w,u) -> reduction -> <u,v,z>.
TransformResult pi7_roundtrip_kernel(const LoInstance& pi7_inst, long long k);

// Full orchestration from any nontrivial Pi to target class j: normalization,
// decomposition + reduction, then recomposition (j = 0) or the Part 1..5
// pipeline; j in {2,7} only for inputs already of that class.
TransformResult bikernel(const LoInstance& inst, int j);

// The post-decomposition tail of bikernel, shared with mixed-file callers.
TransformResult transform_reduced_mixed(const MixedInstance& reduced, long long k, int j);

}  // namespace tpcsp

#pragma once

#include <cstdint>
#include <vector>

#include "tpcsp/instance.hpp"

namespace tpcsp {

// Directed 3-cycle a -> b -> c -> a.
struct Cycle3 {
  VarId a = 0, b = 0, c = 0;
};

// The recursive symmetric-digraph family: level i has 3 * 2^i vertices whose
// arc set decomposes into the stored 3-cycles.
struct HardFamily {
  int level = 0;
  VarTable vars;
  std::vector<Cycle3> cycles;
  std::vector<Arc> digraph;  // union of the cycle arcs
};

// Level 0 is the two opposite orientations of a triangle; each further level
// joins two copies by replacing the first cycle of each half with six cycles
// across the halves. Copy variables gain one prime per vertex-doubling.
HardFamily generate_g(int level);

// Three rotations (u,v,w),(v,w,u),(w,u,v) per cycle, as a Linear Ordering
// instance with parameter k.
LoInstance cycles_to_lo_instance(const HardFamily& family, long long k);

// Every arc's reverse present exactly once and no arc repeated.
bool check_symmetric_no_parallel(const HardFamily& family);

// True iff the arcs of the chosen cycles do NOT form a symmetric digraph.
// The subset must be nonempty and proper.
bool check_subset_asymmetry(const HardFamily& family, const std::vector<int>& cycle_indices);

struct RandSpec {
  int n = 3;
  long long m = 0;
  PiSet pi;
  uint64_t seed = 0;
};

// Deterministic for a fixed seed; m triples drawn uniformly over ordered
// triples of distinct variables.
LoInstance gen_random(const RandSpec& spec);

// Random mixed instance with the given arc and betweenness counts.
MixedInstance gen_random_mixed(int n, long long num_arcs, long long num_btws, uint64_t seed);

}  // namespace tpcsp

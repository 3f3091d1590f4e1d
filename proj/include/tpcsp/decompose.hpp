#pragma once

#include <optional>
#include <utility>

#include "tpcsp/instance.hpp"

namespace tpcsp {

// Expand every constraint into |Pi| Linear Ordering triples; the yes/no
// answer is preserved for the same k. Fails with trivial_pi for the empty
// set and for all of S3 (those cases are decided directly).
LoInstance to_linear_ordering(const LoInstance& inst);

// Triple (u,v,w) becomes arcs (u,v),(v,w) and the betweenness constraint
// (v,{u,w}), multiplicities preserved. Requires Pi = {(123)}.
MixedInstance decompose_lo(const LoInstance& inst);

// Delete complete 3-sets of betweenness constraints: for each variable
// 3-set, the min multiplicity over the three middle choices is removed.
// Returns the surviving constraints and the number of removed 3-sets.
std::pair<std::vector<BtwConstraint>, long long> reduce_betweenness(
    const std::vector<BtwConstraint>& btws);

// Delete pairs of mutually opposite arcs: per unordered pair {u,v},
// min(mult(u,v), mult(v,u)) pairs are removed. Returns the surviving arcs
// and the number of removed pairs.
std::pair<std::vector<Arc>, long long> reduce_arcs(const std::vector<Arc>& arcs);

// Both rules together; b and t receive the removed-pair / removed-3-set
// counts when non-null.
MixedInstance reduce_mixed(const MixedInstance& mixed, long long* b = nullptr,
                           long long* t = nullptr);

// Rebuild a Linear Ordering instance from a reduced mixed instance: each arc
// (u,v) becomes (w,u,v),(u,w,v),(u,v,w) for a new variable w, each
// betweenness (a,{b,c}) becomes (b,a,c),(c,a,b). Variables are restricted to
// those occurring plus the new one. Exactly doubles the deviation of the
// mixed instance for the corresponding orderings.
LoInstance recompose_kernel(const MixedInstance& reduced, long long k);

struct KernelConfig {
  // 4 * 9^6 * 3072 / 11; beyond this many surviving constraints relative to
  // k^2 the instance is already a "yes"
  Rational c_constant = Rational(6530347008LL, 11);
  bool allow_override = false;

  static Rational default_c() { return Rational(6530347008LL, 11); }
};

struct KernelStats {
  long long b = 0;  // deleted opposite-arc pairs
  long long t = 0;  // deleted complete 3-sets
  long long r = 0;  // surviving arc multiplicity
  long long s = 0;  // surviving betweenness multiplicity
};

struct KernelResult {
  enum class Verdict { YES, KERNEL };
  Verdict verdict = Verdict::KERNEL;
  // present iff verdict == KERNEL; carries parameter 2k because the
  // recomposition doubles every deviation
  std::optional<LoInstance> kernel;
  KernelStats stats;
};

// decompose -> reduce -> threshold (r+s >= c*k^2 answers YES) -> recompose.
// k = 0 answers YES immediately: the average is always attainable.
KernelResult kernelize_lo(const LoInstance& inst, const KernelConfig& cfg = {});

}  // namespace tpcsp

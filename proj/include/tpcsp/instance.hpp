#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpcsp/perm.hpp"
#include "tpcsp/rational.hpp"

namespace tpcsp {

using VarId = int;

// Variable names; the index of a name is its VarId.
struct VarTable {
  std::vector<std::string> names;

  int size() const { return static_cast<int>(names.size()); }
  VarId add(const std::string& name);           // fails on duplicates / empty names
  VarId find_or_add(const std::string& name);   // id by first appearance
  std::optional<VarId> find(const std::string& name) const;
  const std::string& name(VarId v) const { return names.at(static_cast<size_t>(v)); }

  // A token not present in the table: base itself, else base + smallest
  // positive decimal suffix.
  std::string fresh_name(const std::string& base) const;

  friend bool operator==(const VarTable& a, const VarTable& b) { return a.names == b.names; }
};

// Ordered triple of pairwise distinct variables with a multiplicity.
struct TripleConstraint {
  VarId v1 = 0, v2 = 0, v3 = 0;
  long long mult = 1;

  friend bool operator==(const TripleConstraint& a, const TripleConstraint& b) {
    return a.v1 == b.v1 && a.v2 == b.v2 && a.v3 == b.v3 && a.mult == b.mult;
  }
};

// A bijection from positions to variables: positions[i] is the variable at
// position i+1 (earlier index = placed earlier).
struct LinearOrdering {
  std::vector<VarId> positions;

  int size() const { return static_cast<int>(positions.size()); }
  // inverse map var -> position index; fails if not a permutation of [0,n)
  std::vector<int> position_of(int n_vars) const;

  friend bool operator==(const LinearOrdering& a, const LinearOrdering& b) {
    return a.positions == b.positions;
  }
};

// The universal input object: variables, triple constraints, Pi, parameter k.
struct LoInstance {
  VarTable vars;
  std::vector<TripleConstraint> constraints;
  PiSet pi;
  long long k = 0;

  int n() const { return vars.size(); }
  long long total_mult() const;  // m

  // Merge equal triples and sort; validates invariants.
  void normalize();

  friend bool operator==(const LoInstance& a, const LoInstance& b) {
    return a.vars == b.vars && a.constraints == b.constraints && a.pi == b.pi && a.k == b.k;
  }
};

struct Arc {
  VarId tail = 0, head = 0;
  long long mult = 1;

  friend bool operator==(const Arc& a, const Arc& b) {
    return a.tail == b.tail && a.head == b.head && a.mult == b.mult;
  }
};

// Betweenness constraint "middle is between outer_lo and outer_hi";
// the outer pair is unordered and stored with outer_lo < outer_hi.
struct BtwConstraint {
  VarId middle = 0;
  VarId outer_lo = 0, outer_hi = 0;
  long long mult = 1;

  friend bool operator==(const BtwConstraint& a, const BtwConstraint& b) {
    return a.middle == b.middle && a.outer_lo == b.outer_lo && a.outer_hi == b.outer_hi &&
           a.mult == b.mult;
  }
};

// An arc multiset plus a betweenness multiset over one variable set.
struct MixedInstance {
  VarTable vars;
  std::vector<Arc> arcs;
  std::vector<BtwConstraint> btws;

  int n() const { return vars.size(); }
  long long r() const;  // total arc multiplicity
  long long s() const;  // total betweenness multiplicity

  void normalize();

  friend bool operator==(const MixedInstance& a, const MixedInstance& b) {
    return a.vars == b.vars && a.arcs == b.arcs && a.btws == b.btws;
  }
};

struct DeviationReport {
  long long satisfied = 0;
  Rational average;    // (|Pi|/6) * m
  Rational deviation;  // satisfied - average when witness present
  std::optional<LinearOrdering> witness;
};

void validate(const LoInstance& inst);
void validate(const MixedInstance& mixed);

// True iff some pi in Pi orders the images of (v1,v2,v3) increasingly.
bool pi_satisfies(const TripleConstraint& c, const LinearOrdering& alpha, const PiSet& pi);

// Multiplicity-weighted count of satisfied constraints.
long long count_satisfied(const LoInstance& inst, const LinearOrdering& alpha);

// count_satisfied minus (|Pi|/6)*m, exact.
Rational deviation(const LoInstance& inst, const LinearOrdering& alpha);

// Satisfied arcs plus satisfied betweenness constraints, weighted.
long long count_satisfied_mixed(const MixedInstance& mixed, const LinearOrdering& alpha);

// (r/2 + s/3), the average satisfied count over a uniformly random ordering.
Rational mixed_average(const MixedInstance& mixed);

// Name-based structural equality: same variable-name set, same constraint
// multiset over names, same pi and k. Invariant under VarId relabeling, which
// the file format cannot pin down.
bool semantically_equal(const LoInstance& a, const LoInstance& b);
bool semantically_equal(const MixedInstance& a, const MixedInstance& b);

}  // namespace tpcsp

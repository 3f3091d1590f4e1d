#pragma once

#include <array>
#include <vector>

#include "tpcsp/instance.hpp"

namespace tpcsp {

// Level functions map variables to {0,1,2,3}, indexed by VarId. Conditioned
// on a level function, an ordering is drawn uniformly among the
// level-monotone ones; the tables below give the exact conditional
// satisfaction probabilities minus the unconditional average.
using LevelFn = std::vector<int>;

// Arc (u,v): 0 if equal levels, +1/2 if level(u) < level(v), else -1/2.
Rational x_value(int level_u, int level_v);

// Betweenness (v,{u,w}), arguments in u,v,w order:
// all equal -> 0; v apart from u = w -> -1/3; v tied with exactly one outer
// -> 1/6; three distinct with v strictly between -> 2/3; otherwise -> -1/3.
Rational y_value(int level_u, int level_v, int level_w);

// Triple (u,v,w): 5/6 if u < v < w; 1/3 if u = v < w or u < v = w;
// 0 if all equal; otherwise -1/6. Always equals
// (x_value(u,v) + x_value(v,w) + y_value(u,v,w)) / 2.
Rational z_value(int level_u, int level_v, int level_w);

// Exact second moment over a uniformly random level function, computed
// pairwise on joint supports (vertex-disjoint pairs contribute zero by
// independence).
//   - Linear Ordering instance: E[(sum of triple deviations)^2]
//   - mixed instance: E[(sum of arc deviations + betweenness deviations)^2];
//     the variable associated with a decomposed triple instance is HALF this
//     sum, see check_lower_bound.
Rational second_moment(const LoInstance& inst);
Rational second_moment(const MixedInstance& mixed);

// Full 4^n enumeration oracle, n <= 5. Kept independent of the pairwise path.
Rational second_moment_full(const LoInstance& inst);
Rational second_moment_full(const MixedInstance& mixed);

// Sum over arc/betweenness pairs of E[X_i Y_j]; identically zero via the
// level-complement involution.
Rational cross_moment_xy(const MixedInstance& mixed);

// Two +/-1 bits per variable; bit 2i is the high bit of the level of
// variable i, bit 2i+1 the low bit (-1 encodes binary 0).
struct EpsVector {
  std::vector<int> bits;
};

std::array<int, 2> eps_from_level(int level);
int level_from_eps(int eps_hi, int eps_lo);

// The 64-term degree-6 indicator polynomial for one triple, evaluated on the
// six bits (u_hi, u_lo, v_hi, v_lo, w_hi, w_lo). Equals z_value of the
// decoded levels.
Rational poly_z_eval(const std::array<int, 6>& eps);

// Sum of the triple polynomials over a Linear Ordering instance.
Rational poly_z_instance(const LoInstance& inst, const EpsVector& eps);

// Fourier coefficients of the single-triple polynomial over subsets of the
// six bits; index is the subset mask (bit i selects eps_i).
std::array<Rational, 64> poly_z_fourier();

// Exact E[Z^4] and the bound 9^6 * E[Z^2]^2 by full enumeration, n <= 5.
std::pair<Rational, Rational> fourth_moment_check(const LoInstance& inst);

// E[Z^2] >= 11(r+s)/3072 for the variable Z associated with a reduced mixed
// instance (half the arc+betweenness sum).
bool check_lower_bound(const MixedInstance& reduced);

// Classification of arc pairs by shared endpoints.
struct PairClass {
  enum class Kind { S1, S2, S3, DISJOINT };
  Kind kind = Kind::DISJOINT;
  VarId anchor1 = -1;  // shared vertex (S1/S2) or tail (S3)
  VarId anchor2 = -1;  // head (S3)
};

// Fails on mutually opposite arcs, which reduced digraphs exclude.
PairClass classify_arc_pair(const Arc& a, const Arc& b);

// 5/64 for S1, -5/64 for S2, 3/16 for S3, 0 for disjoint pairs.
Rational pair_cross_expectation(const PairClass& cls);

}  // namespace tpcsp

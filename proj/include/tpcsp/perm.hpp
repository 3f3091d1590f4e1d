#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tpcsp/error.hpp"

namespace tpcsp {

// The six permutations of {1,2,3} in the fixed order
//   (123),(132),(213),(231),(312),(321)
// which every bitmask in this library refers to. words()[i] is the one-line
// word (pi(1),pi(2),pi(3)).
struct Perm3 {
  int index = 0;  // in [0,5]

  static constexpr int kCount = 6;
  static const std::array<std::array<int, 3>, 6>& words();

  explicit Perm3(int idx) : index(idx) {
    if (idx < 0 || idx >= kCount) fail(Errc::invalid_argument, "Perm3 index out of range");
  }
  const std::array<int, 3>& word() const { return words()[index]; }
  std::string word_str() const;

  static Perm3 from_word(const std::array<int, 3>& w);

  friend bool operator==(const Perm3& a, const Perm3& b) { return a.index == b.index; }
};

// A subset of S3 encoded as a 6-bit mask; bit i refers to Perm3 index i.
struct PiSet {
  unsigned mask = 0;  // in [0,63]

  PiSet() = default;
  explicit PiSet(unsigned m) : mask(m) {
    if (m > 63) fail(Errc::invalid_argument, "PiSet mask out of range");
  }

  bool contains(int perm_index) const { return (mask >> perm_index) & 1u; }
  int size() const { return __builtin_popcount(mask); }
  bool empty() const { return mask == 0; }
  bool full() const { return mask == 63; }

  std::vector<Perm3> members() const;
  std::string words_str() const;  // "123,321"

  friend bool operator==(const PiSet& a, const PiSet& b) { return a.mask == b.mask; }
  friend bool operator!=(const PiSet& a, const PiSet& b) { return !(a == b); }
};

// Element renaming acts by left composition: each word letter x becomes
// sigma(x). Reversal reverses each written word.
Perm3 rename_perm(const Perm3& p, const Perm3& sigma);
Perm3 reverse_perm(const Perm3& p);
PiSet rename_pi(const PiSet& pi, const Perm3& sigma);
PiSet reverse_pi(const PiSet& pi);

// All distinct masks reachable by renaming and optional reversal (the group
// has 12 elements, so no transitive closure is needed).
std::vector<PiSet> pi_orbit(const PiSet& pi);

// Symmetry class in [0,12]. Classes 0..10 follow the standard listing
// (0 = Linear Ordering, 5 = Betweenness, 7 = Circular Ordering,
// 9 = Non-Betweenness); 11 is the empty set and 12 is all of S3.
int canonical_pi_class(const PiSet& pi);

PiSet pi_class_representative(int cls);
// Common problem name for the class, or "" when none is established.
std::string pi_class_name(int cls);

}  // namespace tpcsp

#include "tpcsp/perm.hpp"

#include <algorithm>
#include <mutex>

namespace tpcsp {

const std::array<std::array<int, 3>, 6>& Perm3::words() {
  static const std::array<std::array<int, 3>, 6> kWords = {{
      {1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1},
  }};
  return kWords;
}

std::string Perm3::word_str() const {
  const auto& w = word();
  std::string s;
  for (int x : w) s += static_cast<char>('0' + x);
  return s;
}

Perm3 Perm3::from_word(const std::array<int, 3>& w) {
  for (int i = 0; i < kCount; ++i)
    if (words()[i] == w) return Perm3(i);
  fail(Errc::invalid_argument, "not a permutation word of {1,2,3}");
}

std::vector<Perm3> PiSet::members() const {
  std::vector<Perm3> out;
  for (int i = 0; i < Perm3::kCount; ++i)
    if (contains(i)) out.push_back(Perm3(i));
  return out;
}

std::string PiSet::words_str() const {
  std::string s;
  for (int i = 0; i < Perm3::kCount; ++i) {
    if (!contains(i)) continue;
    if (!s.empty()) s += ',';
    s += Perm3(i).word_str();
  }
  return s;
}

Perm3 rename_perm(const Perm3& p, const Perm3& sigma) {
  const auto& w = p.word();
  const auto& sw = sigma.word();
  return Perm3::from_word({sw[w[0] - 1], sw[w[1] - 1], sw[w[2] - 1]});
}

Perm3 reverse_perm(const Perm3& p) {
  const auto& w = p.word();
  return Perm3::from_word({w[2], w[1], w[0]});
}

PiSet rename_pi(const PiSet& pi, const Perm3& sigma) {
  unsigned m = 0;
  for (int i = 0; i < Perm3::kCount; ++i)
    if (pi.contains(i)) m |= 1u << rename_perm(Perm3(i), sigma).index;
  return PiSet(m);
}

PiSet reverse_pi(const PiSet& pi) {
  unsigned m = 0;
  for (int i = 0; i < Perm3::kCount; ++i)
    if (pi.contains(i)) m |= 1u << reverse_perm(Perm3(i)).index;
  return PiSet(m);
}

std::vector<PiSet> pi_orbit(const PiSet& pi) {
  std::vector<unsigned> masks;
  for (int s = 0; s < Perm3::kCount; ++s) {
    PiSet renamed = rename_pi(pi, Perm3(s));
    masks.push_back(renamed.mask);
    masks.push_back(reverse_pi(renamed).mask);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<PiSet> out;
  out.reserve(masks.size());
  for (unsigned m : masks) out.push_back(PiSet(m));
  return out;
}

namespace {

constexpr unsigned kClassRepMask[13] = {
    0b000001u,  // 0: {(123)}                 Linear Ordering
    0b000011u,  // 1: {(123),(132)}
    0b001101u,  // 2: {(123),(213),(231)}
    0b111010u,  // 3: {(132),(231),(312),(321)}
    0b001001u,  // 4: {(123),(231)}
    0b100001u,  // 5: {(123),(321)}           Betweenness
    0b001011u,  // 6: {(123),(132),(231)}
    0b011001u,  // 7: {(123),(231),(312)}     Circular Ordering
    0b110110u,  // 8: S3 \ {(123),(231)}
    0b011110u,  // 9: S3 \ {(123),(321)}      Non-Betweenness
    0b111110u,  // 10: S3 \ {(123)}
    0b000000u,  // 11: empty
    0b111111u,  // 12: S3
};

unsigned orbit_min(unsigned mask) {
  unsigned best = 63;
  for (const PiSet& p : pi_orbit(PiSet(mask))) best = std::min(best, p.mask);
  return best;
}

// mask -> class id, built once from the representatives' orbits
const std::array<int, 64>& class_table() {
  static std::array<int, 64> table = [] {
    std::array<int, 64> t{};
    t.fill(-1);
    std::array<unsigned, 13> rep_min{};
    for (int c = 0; c < 13; ++c) rep_min[static_cast<size_t>(c)] = orbit_min(kClassRepMask[c]);
    for (unsigned m = 0; m < 64; ++m) {
      unsigned om = orbit_min(m);
      for (int c = 0; c < 13; ++c) {
        if (rep_min[static_cast<size_t>(c)] == om) {
          t[m] = c;
          break;
        }
      }
      if (t[m] < 0) fail(Errc::invalid_instance, "mask outside the 13 symmetry classes");
    }
    return t;
  }();
  return table;
}

}  // namespace

int canonical_pi_class(const PiSet& pi) { return class_table()[pi.mask]; }

PiSet pi_class_representative(int cls) {
  if (cls < 0 || cls > 12) fail(Errc::invalid_argument, "class id out of range");
  return PiSet(kClassRepMask[cls]);
}

std::string pi_class_name(int cls) {
  switch (cls) {
    case 0: return "Linear Ordering";
    case 5: return "Betweenness";
    case 7: return "Circular Ordering";
    case 9: return "Non-Betweenness";
    default: return "";
  }
}

}  // namespace tpcsp

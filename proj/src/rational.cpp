#include "tpcsp/rational.hpp"

namespace tpcsp {

std::string wide_to_string(Wide v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // careful with the minimum value: negate digit by digit
  unsigned __int128 u = neg ? (~static_cast<unsigned __int128>(v) + 1) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s += static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  if (neg) s += '-';
  return std::string(s.rbegin(), s.rend());
}

}  // namespace tpcsp

#include "lowenergy/count.hpp"

#include <algorithm>

namespace lowenergy {

std::string to_string(Count value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace lowenergy

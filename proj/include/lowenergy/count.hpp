#pragma once

#include <cstdint>
#include <string>

#include "lowenergy/error.hpp"

namespace lowenergy {

// Energies reach |A|^2 |B|^2 and higher moments go further; 64 bits is not
// enough at |A| ~ 2^16, so all exact counts are 128-bit.
using Count = unsigned __int128;

std::string to_string(Count value);

inline long double to_long_double(Count value) { return static_cast<long double>(value); }

inline Count checked_add(Count a, Count b) {
  Count r = a + b;
  if (r < a) throw Error(Errc::TooLarge, "128-bit count overflow in addition");
  return r;
}

inline Count checked_mul(Count a, Count b) {
  if (a != 0 && b > ~Count{0} / a) throw Error(Errc::TooLarge, "128-bit count overflow in multiplication");
  return a * b;
}

inline Count checked_pow(Count base, unsigned k) {
  Count r = 1;
  for (unsigned i = 0; i < k; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace lowenergy

#pragma once

#include <gmpxx.h>

#include <string>

#include "lagr/error.hpp"

namespace lagr {

// All exact arithmetic in this library runs over GMP rationals. The few
// places that need a quadratic irrationality use qext.hpp on top of this.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Rat& r) {
  check(is_integer(r) && r.get_num().fits_slong_p(), "rational is not a machine integer: " + r.get_str());
  return r.get_num().get_si();
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

}  // namespace lagr

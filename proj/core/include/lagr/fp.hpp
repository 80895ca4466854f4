#pragma once

#include <cstdint>

#include "lagr/error.hpp"

namespace lagr {

// Prime field element for randomized matrix checks. P is small enough that
// products of two reduced representatives fit in int64 with room to spare.
template <long P>
struct Fp {
  long v = 0;

  Fp() = default;
  Fp(long x) : v(((x % P) + P) % P) {}  // NOLINT: implicit by design

  friend Fp operator+(Fp a, Fp b) { return Fp(a.v + b.v); }
  friend Fp operator-(Fp a, Fp b) { return Fp(a.v - b.v); }
  friend Fp operator*(Fp a, Fp b) { return Fp(a.v * b.v); }
  Fp operator-() const { return Fp(-v); }

  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }

  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

  Fp pow(long e) const {
    Fp base = *this, out(1);
    check(!(v == 0 && e < 0), "Fp: inverse of zero");
    long k = e < 0 ? -e : e;
    for (; k; k >>= 1) {
      if (k & 1) out *= base;
      base *= base;
    }
    return e < 0 ? out.pow_inverse_helper() : out;
  }

  Fp inverse() const {
    check(v != 0, "Fp: inverse of zero");
    return pow(P - 2);
  }

  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }

 private:
  Fp pow_inverse_helper() const { return inverse(); }
};

}  // namespace lagr

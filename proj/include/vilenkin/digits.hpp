#pragma once

#include <cstdint>
#include <vector>

// Carry-free base-p arithmetic on cell indices. Cell k of a grid with resolution m
// is the coset lambda^{-1}(k p^{-m}) + I_m, so the group law on cells is digitwise
// addition of the base-p digits of k.

namespace vilenkin::digits {

using Index = std::uint64_t;

inline Index add(Index a, Index b, int p) {
  Index r = 0, scale = 1;
  while (a || b) {
    r += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return r;
}

inline Index neg(Index a, int p) {
  Index r = 0, scale = 1;
  while (a) {
    r += ((p - a % p) % p) * scale;
    a /= p;
    scale *= p;
  }
  return r;
}

inline Index sub(Index a, Index b, int p) { return add(a, neg(b, p), p); }

/// Base-p digit of a at index i (i = 0 is least significant).
inline int at(Index a, int i, int p) {
  for (int t = 0; t < i; ++t) a /= p;
  return static_cast<int>(a % p);
}

/// Reverses the lowest n base-p digits of a.
inline Index reverse(Index a, int n, int p) {
  Index r = 0;
  for (int i = 0; i < n; ++i) {
    r = r * p + a % p;
    a /= p;
  }
  return r;
}

/// Number of base-p digits needed to write a (0 for a == 0).
inline int count(Index a, int p) {
  int n = 0;
  while (a) {
    a /= p;
    ++n;
  }
  return n;
}

/// sum_i d_i(k) d_{n-1-i}(s) mod p: the exponent of w_k(lambda^{-1}(s / p^n)).
inline int pairing(Index k, Index s, int n, int p) {
  long e = 0;
  Index rs = reverse(s, n, p);
  while (k && rs) {
    e += static_cast<long>(k % p) * static_cast<long>(rs % p);
    k /= p;
    rs /= p;
  }
  return static_cast<int>(e % p);
}

}  // namespace vilenkin::digits

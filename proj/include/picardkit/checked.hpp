#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "picardkit/errors.hpp"

namespace picardkit {

using Int = std::int64_t;
using IntVector = std::vector<Int>;

namespace checked {

inline Int add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
  return out;
}

inline Int sub(Int a, Int b) {
  Int out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("integer overflow in subtraction");
  return out;
}

inline Int mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
  return out;
}

inline Int neg(Int a) { return sub(0, a); }

/// a += b * c
inline void fma(Int& acc, Int b, Int c) { acc = add(acc, mul(b, c)); }

inline Int dot(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw DimensionError("dot product of vectors of different length");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) fma(s, a[i], b[i]);
  return s;
}

/// Exact dot product in 128 bits; cannot overflow for fewer than 2^62 terms.
inline __int128 wide_dot(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw DimensionError("dot product of vectors of different length");
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  return s;
}

}  // namespace checked

/// Non-negative gcd of all entries; 0 for the zero vector.
inline Int content(std::span<const Int> v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, x);
  return g;
}

/// Divides by the content; the zero vector is returned unchanged.
inline IntVector primitive(IntVector v) {
  const Int g = content(v);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

/// Primitive representative of the line through v with first nonzero entry positive.
inline IntVector normalize_line(IntVector v) {
  v = primitive(std::move(v));
  for (Int x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : v) y = -y;
    break;
  }
  return v;
}

inline bool is_zero(std::span<const Int> v) {
  for (Int x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace picardkit

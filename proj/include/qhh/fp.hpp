#pragma once

// Scalar arithmetic in the prime field F_p. Elements are canonical residues in
// [0, p) stored as 32-bit words; the modulus must stay below 2^31 so that a sum
// of two residues never wraps.

#include <cstdint>
#include <limits>
#include <vector>

#include "qhh/error.hpp"

namespace qhh::fp {

using elem = std::uint32_t;

inline constexpr std::uint64_t max_modulus = (std::uint64_t{1} << 31) - 1;

constexpr elem reduce(std::int64_t x, elem p) noexcept {
  auto r = x % static_cast<std::int64_t>(p);
  return static_cast<elem>(r < 0 ? r + p : r);
}

constexpr elem add(elem a, elem b, elem p) noexcept {
  elem s = a + b;
  return s >= p ? s - p : s;
}

constexpr elem sub(elem a, elem b, elem p) noexcept { return a >= b ? a - b : a + p - b; }

constexpr elem neg(elem a, elem p) noexcept { return a == 0 ? 0 : p - a; }

constexpr elem mul(elem a, elem b, elem p) noexcept {
  return static_cast<elem>(static_cast<std::uint64_t>(a) * b % p);
}

constexpr elem pow(elem a, std::uint64_t e, elem p) noexcept {
  std::uint64_t result = 1 % p, base = a % p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<elem>(result);
}

inline elem inv(elem a, elem p) {
  if (a % p == 0) throw error(errc::out_of_range, "zero has no inverse in F_" + std::to_string(p));
  // extended Euclid; p need not be prime for callers that already checked gcd = 1
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t quo = r / new_r;
    t -= quo * new_t;
    std::swap(t, new_t);
    r -= quo * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw error(errc::out_of_range, "element not invertible");
  return reduce(t, p);
}

/// Signed exponent: negative powers go through the inverse.
inline elem pow_signed(elem a, std::int64_t e, elem p) {
  if (e >= 0) return pow(a, static_cast<std::uint64_t>(e), p);
  return pow(inv(a, p), static_cast<std::uint64_t>(-e), p);
}

constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Multiplicative order of a nonzero element.
inline std::uint64_t order(elem a, elem p) {
  if (a % p == 0) throw error(errc::out_of_range, "zero has no multiplicative order");
  std::uint64_t ord = p - 1;
  for (auto f : prime_factors(p - 1))
    while (ord % f == 0 && pow(a, ord / f, p) == 1) ord /= f;
  return ord;
}

/// Smallest generator of the multiplicative group of F_p.
inline elem primitive_root(elem p) {
  if (!is_prime(p)) throw error(errc::not_prime, std::to_string(p));
  if (p == 2) return 1;
  auto factors = prime_factors(p - 1);
  for (elem g = 2; g < p; ++g) {
    bool ok = true;
    for (auto f : factors)
      if (pow(g, (p - 1) / f, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw error(errc::not_prime, "no primitive root found");
}

}  // namespace qhh::fp

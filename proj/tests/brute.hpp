#pragma once

// Slow reference implementations used to derive expected values in tests.
// Nothing here calls into the library; everything is plain uint64 loops.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace brute {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t n) { return a * b % n; }

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1 % n;
  for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a % n, n);
  return r;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline unsigned v2(std::uint64_t x) {
  unsigned v = 0;
  while (x % 2 == 0) {
    x /= 2;
    ++v;
  }
  return v;
}

/// {x^{2^k} mod n}, x over units or over all residues, each power computed
/// by k separate squarings.
inline std::set<std::uint64_t> powers(std::uint64_t n, unsigned k, bool units_only) {
  std::set<std::uint64_t> out;
  for (std::uint64_t x = 0; x < n; ++x) {
    if (units_only && gcd(x, n) != 1) continue;
    std::uint64_t y = x % n;
    for (unsigned i = 0; i < k; ++i) y = mul(y, y, n);
    out.insert(y);
  }
  return out;
}

/// +1 iff x^{2^k} = a (mod p) is solvable.
inline int prime_symbol(std::uint64_t a, std::uint64_t p, unsigned k) {
  return powers(p, k, true).count(a % p) ? 1 : -1;
}

inline int composite_symbol(std::uint64_t a, std::uint64_t n, unsigned k) {
  int s = 1;
  for (const auto& [p, e] : factor(n))
    for (unsigned i = 0; i < e; ++i) s *= prime_symbol(a, p, k);
  return s;
}

/// Jacobi symbol as a product of Legendre symbols from Euler's criterion.
inline int jacobi(std::uint64_t a, std::uint64_t n) {
  int s = 1;
  for (const auto& [p, e] : factor(n)) {
    const std::uint64_t r = pow(a, (p - 1) / 2, p);
    const int legendre = (a % p == 0) ? 0 : (r == 1 ? 1 : -1);
    for (unsigned i = 0; i < e; ++i) s *= legendre;
  }
  return s;
}

/// Sign of a permutation of {0..n-1} by counting inversions.
inline int inversion_sign(const std::vector<std::uint64_t>& image) {
  std::uint64_t inv = 0;
  for (std::size_t i = 0; i < image.size(); ++i)
    for (std::size_t j = i + 1; j < image.size(); ++j) inv += image[i] > image[j];
  return inv % 2 ? -1 : 1;
}

/// Sign of x -> a*x mod n restricted to `set`, by inversions over positions.
inline int multiplication_sign(std::uint64_t a, std::uint64_t n, const std::set<std::uint64_t>& set) {
  const std::vector<std::uint64_t> members(set.begin(), set.end());
  std::vector<std::uint64_t> image;
  for (std::uint64_t x : members) {
    const std::uint64_t y = mul(a, x, n);
    std::uint64_t pos = 0;
    while (members[pos] != y) ++pos;
    image.push_back(pos);
  }
  return inversion_sign(image);
}

inline bool is_square_mod(std::uint64_t a, std::uint64_t n) {
  for (std::uint64_t x = 0; x < n; ++x)
    if (x * x % n == a % n) return true;
  return false;
}

inline bool sum_of_two_squares(std::uint64_t n) {
  for (std::uint64_t x = 0; x * x <= n; ++x)
    for (std::uint64_t y = x; x * x + y * y <= n; ++y)
      if (x * x + y * y == n) return true;
  return false;
}

}  // namespace brute

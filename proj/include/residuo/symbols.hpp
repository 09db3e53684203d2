#pragma once

// The rational 2^k-th power residue symbol (a|n)_{2^k}.
//
// For a prime p not dividing a, the symbol is +1 when x^{2^k} = a mod p has a
// solution and -1 otherwise; for composite n it is the product over the prime
// factors of n, counted with multiplicity.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "residuo/arithmetic.hpp"
#include "residuo/error.hpp"

namespace residuo {

/// Element of {+1, -1} under multiplication.
class Sign {
 public:
  static constexpr Sign plus() noexcept { return Sign(1); }
  static constexpr Sign minus() noexcept { return Sign(-1); }

  static Sign from_int(int v) {
    if (v != 1 && v != -1) fail(Errc::invalid_input, "a sign must be +1 or -1, got " + std::to_string(v));
    return Sign(static_cast<signed char>(v));
  }
  static constexpr Sign from_bool(bool is_plus) noexcept { return is_plus ? plus() : minus(); }

  constexpr int value() const noexcept { return value_; }
  constexpr bool is_plus() const noexcept { return value_ > 0; }
  constexpr bool is_minus() const noexcept { return value_ < 0; }

  /// s^e; only the parity of e matters.
  constexpr Sign pow(std::uint64_t e) const noexcept { return (e % 2 == 0) ? plus() : *this; }

  friend constexpr Sign operator*(Sign lhs, Sign rhs) noexcept {
    return Sign(static_cast<signed char>(lhs.value_ * rhs.value_));
  }
  constexpr Sign& operator*=(Sign rhs) noexcept { return *this = *this * rhs; }
  friend constexpr bool operator==(Sign, Sign) = default;

 private:
  constexpr explicit Sign(signed char v) noexcept : value_(v) {}
  signed char value_;
};

inline std::string to_string(Sign s) { return s.is_plus() ? "+1" : "-1"; }

/// Upper bound on any modulus whose residues get enumerated one by one.
inline constexpr std::uint64_t kEnumerationLimit = 1'000'000;

/// The 2^k-th powers modulo n: either of every residue (the set Z_{n,2^k})
/// or of the units only (the subgroup Z*_{n,2^k}). Members ascend.
struct ResidueClassSet {
  Natural modulus;
  unsigned k = 0;
  bool units_only = true;
  std::vector<std::uint64_t> members;

  bool contains(std::uint64_t r) const { return std::binary_search(members.begin(), members.end(), r); }
  std::size_t size() const noexcept { return members.size(); }

  friend bool operator==(const ResidueClassSet&, const ResidueClassSet&) = default;
};

namespace detail {

inline std::uint64_t enumerable(const Natural& n, std::uint64_t limit, const char* what) {
  if (n > limit)
    fail(Errc::search_space_too_large,
         std::string(what) + " " + n.str() + " exceeds enumeration limit " + std::to_string(limit));
  return n.to_u64();
}

inline void require_prime(const Natural& p) {
  if (!is_prime(p)) fail(Errc::invalid_modulus, p.str() + " is not prime");
}

inline void require_coprime_to_prime(const Natural& a, const Natural& p) {
  if ((a % p).is_zero()) fail(Errc::not_coprime, p.str() + " divides " + a.str());
}

// x^{2^k} mod p for a unit x, with k reduced through Fermat once k is large.
class PrimePowerMap {
 public:
  PrimePowerMap(std::uint64_t p, unsigned k) : p_(p), k_(k) {
    if (k_ > 64) {
      exponent_ = powmod(2, k_, p_ - 1);
      if (exponent_ == 0) exponent_ = p_ - 1;
    }
  }
  std::uint64_t operator()(std::uint64_t x) const {
    if (k_ > 64) return powmod(x, exponent_, p_);
    for (unsigned i = 0; i < k_; ++i) x = mulmod(x, x, p_);
    return x;
  }

 private:
  std::uint64_t p_;
  unsigned k_;
  std::uint64_t exponent_ = 0;
};

}  // namespace detail

/// Symbol at a prime by exhaustive search for x with x^{2^k} = a mod p.
/// This is the brute-force reference every faster route is checked against.
inline Sign symbol_prime_definition(const Natural& a, const Natural& p, unsigned k) {
  const std::uint64_t pp = detail::enumerable(p, kEnumerationLimit, "prime");
  detail::require_prime(p);
  detail::require_coprime_to_prime(a, p);
  if (k == 0 || pp == 2) return Sign::plus();
  const std::uint64_t target = (a % p).to_u64();
  const detail::PrimePowerMap power(pp, k);
  for (std::uint64_t x = 1; x < pp; ++x) {
    if (power(x) == target) return Sign::plus();
  }
  return Sign::minus();
}

/// Euler-type criterion: a^{(p-1)/gcd(2^k, p-1)} mod p is +-1 and equals the
/// symbol, provided (a|p)_{2^{k-1}} = +1. Any other residue proves that
/// precondition false and raises PreconditionViolated. A violating input may
/// still land on +-1, so this is not a full precondition check.
inline Sign symbol_prime_euler(const Natural& a, const Natural& p, unsigned k) {
  detail::require_prime(p);
  detail::require_coprime_to_prime(a, p);
  if (k == 0 || p == 2) return Sign::plus();
  const Natural p_minus_1 = p - 1;
  const unsigned m = valuation(p_minus_1, 2);
  const Natural exponent = p_minus_1 >> std::min(k, m);
  const Residue r = mod_pow(a, exponent, p);
  if (r == 1) return Sign::plus();
  if (r == p_minus_1) return Sign::minus();
  fail(Errc::precondition_violated, "(" + a.str() + "|" + p.str() + ")_{2^" + std::to_string(k - 1) +
                                        "} != 1: Euler power is " + r.str());
}

namespace detail {

// (a|p)_{2^k} for one prime, checking (a|p)_{2^j} = +1 for every j < k by
// climbing from j = 1. Levels beyond v2(p-1) repeat the value at v2(p-1).
inline Sign checked_prime_symbol(const Natural& a, const Natural& p, unsigned k) {
  if (p == 2) return Sign::plus();
  const unsigned m = valuation(p - 1, 2);
  const unsigned top = std::min(k, m);
  for (unsigned j = 1; j <= top; ++j) {
    const Sign s = symbol_prime_euler(a, p, j);
    if (j < k && s.is_minus()) {
      fail(Errc::precondition_violated, "(" + a.str() + "|" + p.str() + ")_{2^" + std::to_string(j) +
                                            "} = -1, so level " + std::to_string(k) + " is undefined");
    }
    if (j == k) return s;
  }
  return Sign::plus();
}

inline void require_coprime(const Natural& a, const Factorization& n_fact) {
  for (const auto& f : n_fact.factors()) require_coprime_to_prime(a, f.prime);
}

}  // namespace detail

/// Composite symbol through the Euler criterion at every prime factor. The
/// per-prime precondition is verified level by level; a failure names the
/// prime and the level.
inline Sign symbol_composite(const Natural& a, const Factorization& n_fact, unsigned k) {
  detail::require_coprime(a, n_fact);
  Sign result = Sign::plus();
  if (k == 0) return result;
  for (const auto& f : n_fact.factors()) result *= detail::checked_prime_symbol(a, f.prime, k).pow(f.exponent);
  return result;
}

/// Composite symbol evaluated with symbol_prime_definition at every prime.
/// Checks (a|p)_{2^{k-1}} = +1 directly by search.
inline Sign symbol_composite_definition(const Natural& a, const Factorization& n_fact, unsigned k) {
  for (const auto& f : n_fact.factors()) detail::enumerable(f.prime, kEnumerationLimit, "prime");
  detail::require_coprime(a, n_fact);
  Sign result = Sign::plus();
  if (k == 0) return result;
  for (const auto& f : n_fact.factors()) {
    if (symbol_prime_definition(a, f.prime, k - 1).is_minus()) {
      fail(Errc::precondition_violated, "(" + a.str() + "|" + f.prime.str() + ")_{2^" + std::to_string(k - 1) + "} = -1");
    }
    result *= symbol_prime_definition(a, f.prime, k).pow(f.exponent);
  }
  return result;
}

/// (a|p)_{2^k} with k clamped to v2(p-1); the value does not change past it.
inline Sign symbol_stabilized(const Natural& a, const Natural& p, unsigned k) {
  detail::require_prime(p);
  detail::require_coprime_to_prime(a, p);
  if (p == 2) return Sign::plus();
  return symbol_prime_definition(a, p, std::min(k, valuation(p - 1, 2)));
}

/// (a^{2^{k-1}}|p)_{2^k} without exponentiating a: the Legendre symbol of a
/// while k <= v2(p-1), and +1 beyond.
inline Sign symbol_power_shortcut(const Natural& a, const Natural& p, unsigned k) {
  if (k == 0) fail(Errc::invalid_input, "power shortcut needs k >= 1");
  detail::require_prime(p);
  detail::require_coprime_to_prime(a, p);
  if (p == 2 || k > valuation(p - 1, 2)) return Sign::plus();
  return Sign::from_int(to_int(jacobi(a, p)));
}

/// Enumerates the 2^k-th powers modulo n by repeated squaring of the whole set;
/// the chain of images is decreasing, so it stops early at a fixed point.
inline ResidueClassSet residue_set(const Natural& n, unsigned k, bool units_only) {
  const std::uint64_t nn = detail::enumerable(n, kEnumerationLimit, "modulus");
  if (nn == 0) fail(Errc::invalid_modulus, "modulus must be positive");

  std::vector<char> seen(nn, 0);
  if (units_only && nn > 1) {
    // Sieve out multiples of each prime factor of n.
    const Factorization fact = factorize(n);
    for (const auto& f : fact.factors()) {
      const std::uint64_t p = f.prime.to_u64();
      for (std::uint64_t x = 0; x < nn; x += p) seen[x] = 1;
    }
  }
  std::vector<std::uint64_t> current;
  current.reserve(nn);
  for (std::uint64_t x = 0; x < nn; ++x) {
    if (!seen[x]) current.push_back(x);
  }
  std::fill(seen.begin(), seen.end(), 0);
  for (unsigned level = 0; level < k; ++level) {
    std::vector<std::uint64_t> next;
    next.reserve(current.size());
    for (std::uint64_t x : current) {
      const std::uint64_t y = detail::mulmod(x, x, nn);
      if (!seen[y]) {
        seen[y] = 1;
        next.push_back(y);
      }
    }
    for (std::uint64_t y : next) seen[y] = 0;
    std::sort(next.begin(), next.end());
    if (next == current) break;
    current = std::move(next);
  }
  return ResidueClassSet{n, k, units_only, std::move(current)};
}

}  // namespace residuo

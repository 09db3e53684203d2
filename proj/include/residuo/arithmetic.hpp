#pragma once

// Arbitrary-precision integer utilities shared by every other header: the
// Natural value type, modular exponentiation, gcd/inverse, valuations, the
// Jacobi symbol, Miller-Rabin primality and rho factorization.
//
// Routines that are called in tight enumeration loops take a uint64 fast path
// whenever the operands fit; the results are identical either way.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "residuo/error.hpp"

namespace residuo {

using BigInt = boost::multiprecision::cpp_int;

/// Nonnegative integer of unbounded size. Arithmetic that would leave the
/// naturals (negative differences, division by zero) throws InvalidInput.
class Natural {
 public:
  Natural() = default;

  template <std::integral I>
    requires(!std::same_as<I, bool>)
  Natural(I value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I>) {
      if (value < 0) fail(Errc::invalid_input, "negative value for Natural");
    }
    value_ = static_cast<unsigned long long>(value);
  }

  explicit Natural(BigInt value) : value_(std::move(value)) {
    if (value_ < 0) fail(Errc::invalid_input, "negative value for Natural");
  }

  /// Parses a plain decimal string (digits only, no sign, no whitespace).
  static Natural parse(std::string_view text) {
    if (text.empty()) fail(Errc::invalid_input, "empty decimal string");
    for (char c : text) {
      if (c < '0' || c > '9') fail(Errc::invalid_input, "not a decimal natural: '" + std::string(text) + "'");
    }
    return Natural(BigInt(std::string(text)));
  }

  std::string str() const { return value_.str(); }
  const BigInt& big() const noexcept { return value_; }

  bool is_zero() const { return value_.is_zero(); }
  bool is_odd() const { return boost::multiprecision::bit_test(value_, 0); }
  bool is_even() const { return !is_odd(); }

  bool fits_u64() const { return value_ <= std::numeric_limits<std::uint64_t>::max(); }
  std::uint64_t to_u64() const {
    if (!fits_u64()) fail(Errc::search_space_too_large, "value " + str() + " exceeds 64 bits");
    return value_.convert_to<std::uint64_t>();
  }

  std::size_t bit_length() const {
    return is_zero() ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(value_)) + 1;
  }

  Natural& operator+=(const Natural& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  Natural& operator-=(const Natural& rhs) {
    if (value_ < rhs.value_) fail(Errc::invalid_input, "natural subtraction underflow");
    value_ -= rhs.value_;
    return *this;
  }
  Natural& operator*=(const Natural& rhs) {
    value_ *= rhs.value_;
    return *this;
  }
  Natural& operator/=(const Natural& rhs) {
    if (rhs.is_zero()) fail(Errc::invalid_input, "division by zero");
    value_ /= rhs.value_;
    return *this;
  }
  Natural& operator%=(const Natural& rhs) {
    if (rhs.is_zero()) fail(Errc::invalid_input, "modulo by zero");
    value_ %= rhs.value_;
    return *this;
  }
  Natural& operator<<=(unsigned shift) {
    value_ <<= shift;
    return *this;
  }
  Natural& operator>>=(unsigned shift) {
    value_ >>= shift;
    return *this;
  }

  friend Natural operator+(Natural lhs, const Natural& rhs) { return lhs += rhs; }
  friend Natural operator-(Natural lhs, const Natural& rhs) { return lhs -= rhs; }
  friend Natural operator*(Natural lhs, const Natural& rhs) { return lhs *= rhs; }
  friend Natural operator/(Natural lhs, const Natural& rhs) { return lhs /= rhs; }
  friend Natural operator%(Natural lhs, const Natural& rhs) { return lhs %= rhs; }
  friend Natural operator<<(Natural lhs, unsigned shift) { return lhs <<= shift; }
  friend Natural operator>>(Natural lhs, unsigned shift) { return lhs >>= shift; }

  friend bool operator==(const Natural& lhs, const Natural& rhs) { return lhs.value_ == rhs.value_; }
  friend std::strong_ordering operator<=>(const Natural& lhs, const Natural& rhs) {
    const int c = lhs.value_.compare(rhs.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.value_; }

 private:
  BigInt value_;
};

/// A residue is a Natural reduced below some modulus; the type is shared.
using Residue = Natural;

/// 2^k as a Natural.
inline Natural pow2(unsigned k) { return Natural(1) << k; }

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

inline BigInt mulmod(const BigInt& a, const BigInt& b, const BigInt& m) { return (a * b) % m; }
inline BigInt powmod(const BigInt& base, const BigInt& exp, const BigInt& m) {
  return boost::multiprecision::powm(base, exp, m);
}

inline unsigned low_bits(std::uint64_t x, unsigned mask) { return static_cast<unsigned>(x & mask); }
inline unsigned low_bits(const BigInt& x, unsigned mask) {
  const BigInt masked = x & mask;
  return masked.convert_to<unsigned>();
}

inline unsigned trailing_zeros(std::uint64_t x) { return static_cast<unsigned>(__builtin_ctzll(x)); }
inline unsigned trailing_zeros(const BigInt& x) { return static_cast<unsigned>(boost::multiprecision::lsb(x)); }

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}
inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

// Binary-free reciprocity loop; returns -1, 0 or +1. n must be odd.
template <class T>
int jacobi(T a, T n) {
  a %= n;
  int result = 1;
  while (a != 0) {
    while (low_bits(a, 1) == 0) {
      a >>= 1;
      const unsigned r = low_bits(n, 7);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (low_bits(a, 3) == 3 && low_bits(n, 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

// Strong probable-prime test to the given base. n odd, n > 3.
template <class T>
bool strong_probable_prime(const T& n, const T& base) {
  const T n_minus_1 = n - 1;
  const unsigned s = trailing_zeros(n_minus_1);
  const T d = n_minus_1 >> s;
  const T a = base % n;
  if (a == 0) return true;
  T x = powmod(a, d, n);
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

inline constexpr std::uint64_t kSmallPrimeBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// The first 13 primes as bases decide primality for every n below this value.
inline const BigInt& deterministic_mr_limit() {
  static const BigInt limit("3317044064679887385961981");
  return limit;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kSmallPrimeBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  for (std::uint64_t p : kSmallPrimeBases) {
    if (!strong_probable_prime<std::uint64_t>(n, p)) return false;
  }
  return true;
}

inline bool is_prime_big(const BigInt& n) {
  for (std::uint64_t p : kSmallPrimeBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (std::uint64_t p : kSmallPrimeBases) {
    if (!strong_probable_prime<BigInt>(n, BigInt(p))) return false;
  }
  if (n < deterministic_mr_limit()) return true;
  // 64 further bases: each lets a composite through with probability at most
  // 1/4, so the residual error is below 2^-128. The bases are derived from n
  // itself so the answer is reproducible.
  const BigInt low_word = n & std::numeric_limits<std::uint64_t>::max();
  std::mt19937_64 engine(0x9e3779b97f4a7c15ULL ^ low_word.convert_to<std::uint64_t>());
  const BigInt span = n - 3;
  for (int round = 0; round < 64; ++round) {
    BigInt r = 0;
    for (std::size_t bits = 0; bits <= boost::multiprecision::msb(n); bits += 64) r = (r << 64) | engine();
    if (!strong_probable_prime<BigInt>(n, BigInt(r % span + 2))) return false;
  }
  return true;
}

inline std::uint64_t absdiff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }
inline BigInt absdiff(const BigInt& a, const BigInt& b) { return a > b ? BigInt(a - b) : BigInt(b - a); }

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite n, or nullopt once `budget` iterations have been spent.
template <class T>
std::optional<T> rho_split(const T& n, std::uint64_t budget) {
  constexpr std::uint64_t kBatch = 128;
  std::uint64_t spent = 0;
  for (std::uint64_t c = 1;; ++c) {
    const T cc = T(c) % n;
    const T gap = n - cc;
    auto step = [&](const T& v) {
      // v^2 + c mod n without overflowing a 64-bit T.
      T sq = mulmod(v, v, n);
      return sq >= gap ? T(sq - gap) : T(sq + cc);
    };
    T y = T(2) % n;
    T x = y;
    T saved = y;
    T product = 1;
    T g = 1;
    std::uint64_t r = 1;
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      spent += r;
      for (std::uint64_t done = 0; done < r && g == 1; done += kBatch) {
        saved = y;
        const std::uint64_t batch = std::min(kBatch, r - done);
        for (std::uint64_t i = 0; i < batch; ++i) {
          y = step(y);
          product = mulmod(product, absdiff(x, y), n);
        }
        spent += batch;
        g = gcd(product, n);
      }
      r *= 2;
      if (spent > budget) return std::nullopt;
    }
    if (g == n) {
      do {
        saved = step(saved);
        g = gcd(absdiff(x, saved), n);
        if (++spent > budget) return std::nullopt;
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

}  // namespace detail

/// base^exponent mod modulus by square-and-multiply.
inline Residue mod_pow(const Natural& base, const Natural& exponent, const Natural& modulus) {
  if (modulus < 2) fail(Errc::invalid_modulus, "modulus must be at least 2, got " + modulus.str());
  if (modulus.fits_u64() && exponent.fits_u64()) {
    const std::uint64_t m = modulus.to_u64();
    const std::uint64_t b = (base % modulus).to_u64();
    return Natural(detail::powmod(b, exponent.to_u64(), m));
  }
  return Natural(detail::powmod(base.big(), exponent.big(), modulus.big()));
}

/// gcd(0, 0) = 0.
inline Natural gcd(const Natural& a, const Natural& b) {
  if (a.fits_u64() && b.fits_u64()) return Natural(detail::gcd(a.to_u64(), b.to_u64()));
  return Natural(detail::gcd(a.big(), b.big()));
}

/// Largest k with b^k | n.
inline unsigned valuation(const Natural& n, const Natural& base) {
  if (n.is_zero()) fail(Errc::undefined_valuation, "valuation of 0 is undefined");
  if (base < 2) fail(Errc::invalid_input, "valuation base must be at least 2, got " + base.str());
  if (base == 2) return detail::trailing_zeros(n.big());
  unsigned k = 0;
  BigInt rest = n.big();
  const BigInt& b = base.big();
  while (rest % b == 0) {
    rest /= b;
    ++k;
  }
  return k;
}

enum class JacobiValue : int { minus_one = -1, zero = 0, plus_one = 1 };

inline int to_int(JacobiValue v) noexcept { return static_cast<int>(v); }

/// Jacobi symbol (a|n) for odd n. Zero exactly when gcd(a, n) > 1.
inline JacobiValue jacobi(const Natural& a, const Natural& n) {
  if (n.is_even()) fail(Errc::invalid_modulus, "Jacobi symbol needs an odd modulus, got " + n.str());
  int r = 0;
  if (a.fits_u64() && n.fits_u64()) {
    r = detail::jacobi<std::uint64_t>(a.to_u64(), n.to_u64());
  } else {
    r = detail::jacobi<BigInt>(a.big(), n.big());
  }
  return static_cast<JacobiValue>(r);
}

/// Miller-Rabin with the first 13 prime bases: exact below 3.3e24, error
/// below 2^-128 above.
inline bool is_prime(const Natural& n) {
  if (n.fits_u64()) return detail::is_prime_u64(n.to_u64());
  return detail::is_prime_big(n.big());
}

struct PrimePower {
  Natural prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power decomposition with strictly increasing primes.
class Factorization {
 public:
  /// The empty factorization of 1.
  Factorization() = default;

  explicit Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const auto& f = factors_[i];
      if (f.exponent == 0) fail(Errc::invalid_input, "factorization exponent must be positive");
      if (i > 0 && !(factors_[i - 1].prime < f.prime))
        fail(Errc::invalid_input, "factorization primes must be strictly increasing");
      if (!is_prime(f.prime)) fail(Errc::invalid_input, f.prime.str() + " in factorization is not prime");
    }
  }

  const std::vector<PrimePower>& factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return factors_.size(); }
  bool empty() const noexcept { return factors_.empty(); }

  Natural value() const {
    Natural v = 1;
    for (const auto& f : factors_) {
      for (unsigned e = 0; e < f.exponent; ++e) v *= f.prime;
    }
    return v;
  }

  /// True for p*q with p != q, both primes, each to the first power.
  bool is_squarefree_semiprime() const {
    return factors_.size() == 2 && factors_[0].exponent == 1 && factors_[1].exponent == 1;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> factors_;
};

struct TrialDivision {
  std::vector<PrimePower> found;
  Natural cofactor;
};

/// Strips every prime factor <= bound from n, with multiplicity.
inline TrialDivision trial_division(const Natural& n, const Natural& bound) {
  if (n.is_zero()) fail(Errc::invalid_input, "trial division of 0");
  TrialDivision out{{}, n};
  Natural& rest = out.cofactor;
  auto strip = [&](const Natural& d) {
    unsigned e = 0;
    while ((rest % d).is_zero()) {
      rest /= d;
      ++e;
    }
    if (e > 0) out.found.push_back({d, e});
  };
  if (bound >= 2) strip(2);
  Natural d = 3;
  while (d <= bound && d * d <= rest) {
    strip(d);
    d += 2;
  }
  // Whatever is left has no factor below d, so if it is small enough it is
  // itself a prime within the bound.
  if (rest > 1 && rest <= bound) {
    out.found.push_back({rest, 1});
    rest = 1;
  }
  return out;
}

inline constexpr std::uint64_t kRhoStepCap = 10'000'000;

/// Complete factorization by trial division to 1000, then Brent-rho splitting
/// with a per-split budget of kRhoStepCap iterations.
inline Factorization factorize(const Natural& n, std::uint64_t rho_step_cap = kRhoStepCap) {
  if (n.is_zero()) fail(Errc::invalid_input, "cannot factor 0");
  auto td = trial_division(n, 1000);
  std::map<Natural, unsigned> primes;
  for (const auto& f : td.found) primes[f.prime] += f.exponent;

  std::vector<Natural> pending;
  if (td.cofactor > 1) pending.push_back(td.cofactor);
  while (!pending.empty()) {
    Natural c = std::move(pending.back());
    pending.pop_back();
    if (is_prime(c)) {
      ++primes[c];
      continue;
    }
    std::optional<Natural> d;
    if (c.fits_u64()) {
      if (auto s = detail::rho_split<std::uint64_t>(c.to_u64(), rho_step_cap)) d = Natural(*s);
    } else {
      if (auto s = detail::rho_split<BigInt>(c.big(), rho_step_cap)) d = Natural(*s);
    }
    if (!d) fail(Errc::factorization_timeout, "rho exceeded " + std::to_string(rho_step_cap) + " steps on " + c.str());
    pending.push_back(c / *d);
    pending.push_back(*d);
  }

  std::vector<PrimePower> factors;
  factors.reserve(primes.size());
  for (auto& [p, e] : primes) factors.push_back({p, e});
  return Factorization(std::move(factors));
}

/// The x in [1, n) with a*x = 1 mod n.
inline Residue mod_inverse(const Natural& a, const Natural& n) {
  if (n < 2) fail(Errc::invalid_modulus, "inverse needs modulus at least 2, got " + n.str());
  BigInt old_r = a.big() % n.big(), r = n.big();
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    const BigInt q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1) fail(Errc::not_invertible, a.str() + " has no inverse modulo " + n.str());
  BigInt x = old_s % n.big();
  if (x < 0) x += n.big();
  return Natural(x);
}

inline Natural isqrt(const Natural& n) { return Natural(BigInt(boost::multiprecision::sqrt(n.big()))); }

inline bool is_perfect_square(const Natural& n) {
  const Natural r = isqrt(n);
  return r * r == n;
}

}  // namespace residuo

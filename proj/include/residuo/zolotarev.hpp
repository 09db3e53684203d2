#pragma once

// Power residue symbols as signs of multiplication permutations.
//
// For a prime p and (a|p)_{2^{k-1}} = +1, the symbol (a|p)_{2^k} is the sign
// of x -> a*x acting on the subgroup Z*_{p,2^{k-1}}. For N = p*q the same holds
// on Z_{N,2^{k-1}} when N = 1 mod 2^k and on Z*_{N,2^{k-1}} otherwise. With
// three or more prime factors the statement breaks down, and
// find_tripleprime_counterexample exhibits the failure.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "residuo/arithmetic.hpp"
#include "residuo/error.hpp"
#include "residuo/symbols.hpp"

namespace residuo {

/// A bijection of a finite set of residues: domain[i] maps to image[i].
struct PermutationTable {
  std::vector<std::uint64_t> domain;
  std::vector<std::uint64_t> image;

  friend bool operator==(const PermutationTable&, const PermutationTable&) = default;
};

/// Sign by cycle decomposition: (-1)^(|domain| - #cycles).
inline Sign permutation_sign(const PermutationTable& perm) {
  const auto& dom = perm.domain;
  const std::size_t n = dom.size();
  if (perm.image.size() != n) fail(Errc::not_a_permutation, "domain and image differ in length");
  if (!std::is_sorted(dom.begin(), dom.end()) || std::adjacent_find(dom.begin(), dom.end()) != dom.end())
    fail(Errc::not_a_permutation, "domain must be strictly increasing");

  std::vector<std::size_t> target(n);
  std::vector<char> hit(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = std::lower_bound(dom.begin(), dom.end(), perm.image[i]);
    if (it == dom.end() || *it != perm.image[i])
      fail(Errc::not_a_permutation, "image value " + std::to_string(perm.image[i]) + " is outside the domain");
    target[i] = static_cast<std::size_t>(it - dom.begin());
    if (hit[target[i]]++) fail(Errc::not_a_permutation, "image value " + std::to_string(perm.image[i]) + " repeats");
  }

  std::vector<char> visited(n, 0);
  std::size_t cycles = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start]) continue;
    ++cycles;
    for (std::size_t i = start; !visited[i]; i = target[i]) visited[i] = 1;
  }
  return Sign::from_bool((n - cycles) % 2 == 0);
}

/// x -> a*x mod n restricted to set.members.
inline PermutationTable multiplication_permutation(const Natural& a, const Natural& n, const ResidueClassSet& set) {
  if (set.modulus != n) fail(Errc::invalid_input, "set modulus " + set.modulus.str() + " differs from " + n.str());
  if (gcd(a, n) != 1) fail(Errc::not_coprime, a.str() + " is not coprime to " + n.str());
  const std::uint64_t nn = n.to_u64();
  const std::uint64_t aa = (a % n).to_u64();
  PermutationTable table{set.members, {}};
  table.image.reserve(set.size());
  for (std::uint64_t x : set.members) {
    const std::uint64_t y = detail::mulmod(aa, x, nn);
    if (!set.contains(y))
      fail(Errc::not_closed_under_action, "multiplication by " + a.str() + " maps " + std::to_string(x) + " to " +
                                              std::to_string(y) + ", outside the set");
    table.image.push_back(y);
  }
  return table;
}

namespace detail {

// Sign of x -> a*x mod n on a sorted member list, through a dense index of
// [0, n). Same result as permutation_sign(multiplication_permutation(...)).
inline Sign multiplication_sign(std::uint64_t a, std::uint64_t n, const std::vector<std::uint64_t>& members) {
  std::vector<std::int32_t> index(n, -1);
  for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<std::int32_t>(i);
  std::vector<char> visited(members.size(), 0);
  std::size_t cycles = 0;
  for (std::size_t start = 0; start < members.size(); ++start) {
    if (visited[start]) continue;
    ++cycles;
    for (std::size_t i = start; !visited[i];) {
      visited[i] = 1;
      const std::uint64_t y = mulmod(a, members[i], n);
      if (index[y] < 0)
        fail(Errc::not_closed_under_action, "multiplication by " + std::to_string(a) + " maps " +
                                                std::to_string(members[i]) + " outside the set");
      i = static_cast<std::size_t>(index[y]);
    }
  }
  // a is a unit, so the closed map is injective and the walk above only ever
  // closes cycles at their start.
  return Sign::from_bool((members.size() - cycles) % 2 == 0);
}

}  // namespace detail

/// (a|p)_{2^k} as the sign of multiplication by a on Z*_{p,2^{k-1}}. The
/// precondition is checked by membership of a in that subgroup.
inline Sign zolotarev_prime(const Natural& a, const Natural& p, unsigned k) {
  if (k == 0) fail(Errc::invalid_input, "permutation characterization needs k >= 1");
  detail::enumerable(p, kEnumerationLimit, "prime");
  detail::require_prime(p);
  detail::require_coprime_to_prime(a, p);
  const ResidueClassSet units = residue_set(p, k - 1, true);
  if (!units.contains((a % p).to_u64()))
    fail(Errc::precondition_violated, "(" + a.str() + "|" + p.str() + ")_{2^" + std::to_string(k - 1) + "} = -1");
  return detail::multiplication_sign((a % p).to_u64(), p.to_u64(), units.members);
}

/// (m|pq)_{2^k} as a permutation sign. The acted-on set is the full power set
/// Z_{N,2^{k-1}} (zero included, as a fixed point) when N = 1 mod 2^k, and the
/// unit subgroup otherwise.
inline Sign zolotarev_semiprime(const Natural& m, const Natural& p, const Natural& q, unsigned k) {
  if (k == 0) fail(Errc::invalid_input, "permutation characterization needs k >= 1");
  if (p == q) fail(Errc::not_admissible_modulus, "factors must be distinct, got " + p.str() + " twice");
  for (const Natural* f : {&p, &q}) {
    if (*f == 2 || !is_prime(*f)) fail(Errc::not_admissible_modulus, f->str() + " is not an odd prime");
  }
  const Natural n = p * q;
  detail::enumerable(n, kEnumerationLimit, "modulus");
  if (gcd(m, n) != 1) fail(Errc::not_coprime, m.str() + " is not coprime to " + n.str());
  for (const Natural* f : {&p, &q}) {
    if (!residue_set(*f, k - 1, true).contains((m % *f).to_u64()))
      fail(Errc::precondition_violated, "(" + m.str() + "|" + f->str() + ")_{2^" + std::to_string(k - 1) + "} = -1");
  }
  const bool full_set = k < n.bit_length() && (n % pow2(k)) == 1;
  return detail::multiplication_sign((m % n).to_u64(), n.to_u64(), residue_set(n, k - 1, !full_set).members);
}

/// Sign of the componentwise product of permutations sigma_i on sets of the
/// given sizes: prod sgn(sigma_i)^(|X| / |X_i|) with |X| the product of sizes.
inline Sign product_permutation_sign(std::span<const Sign> signs, std::span<const std::uint64_t> sizes) {
  if (signs.size() != sizes.size()) fail(Errc::invalid_input, "signs and sizes differ in length");
  if (signs.empty()) fail(Errc::invalid_input, "need at least one factor");
  Natural total = 1;
  for (std::uint64_t s : sizes) {
    if (s == 0) fail(Errc::invalid_input, "set sizes must be positive");
    total *= s;
  }
  Sign result = Sign::plus();
  for (std::size_t i = 0; i < signs.size(); ++i) {
    const Natural gamma = total / sizes[i];
    result *= signs[i].pow(gamma.is_odd() ? 1 : 0);
  }
  return result;
}

struct TriplePrimeCounterexample {
  std::uint64_t n = 0;
  std::uint64_t m = 0;

  friend bool operator==(const TriplePrimeCounterexample&, const TriplePrimeCounterexample&) = default;
};

/// True for n = p*q*r with distinct primes, exactly one of them 3 mod 4 and
/// the other two 1 mod 4.
inline bool is_tripleprime_shape(const Factorization& f) {
  if (f.size() != 3) return false;
  int three_mod_four = 0;
  for (const auto& pp : f.factors()) {
    if (pp.exponent != 1 || pp.prime == 2) return false;
    if ((pp.prime % 4) == 3) ++three_mod_four;
  }
  return three_mod_four == 1;
}

/// True when m is a quadratic residue modulo every prime of n, (m|n)_4 = -1,
/// and multiplication by m nevertheless has sign +1 on both Z*_{n,2} and Z_{n,2}.
inline bool is_tripleprime_counterexample(std::uint64_t n, std::uint64_t m, const Factorization& f,
                                          const ResidueClassSet& units, const ResidueClassSet& full) {
  if (detail::gcd(m, n) != 1) return false;
  for (const auto& pp : f.factors()) {
    if (jacobi(m, pp.prime) != JacobiValue::plus_one) return false;
  }
  if (symbol_composite(m, f, 2).is_plus()) return false;
  return permutation_sign(multiplication_permutation(m, n, units)).is_plus() &&
         permutation_sign(multiplication_permutation(m, n, full)).is_plus();
}

/// First (n, m) in lexicographic order with n <= limit witnessing that the
/// semiprime characterization fails for three prime factors.
inline std::optional<TriplePrimeCounterexample> find_tripleprime_counterexample(std::uint64_t limit) {
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (n % 2 == 0) continue;
    const Factorization f = factorize(n);
    if (!is_tripleprime_shape(f)) continue;
    const ResidueClassSet units = residue_set(n, 1, true);
    const ResidueClassSet full = residue_set(n, 1, false);
    for (std::uint64_t m = 1; m < n; ++m) {
      if (is_tripleprime_counterexample(n, m, f, units, full)) return TriplePrimeCounterexample{n, m};
    }
  }
  return std::nullopt;
}

}  // namespace residuo

#pragma once

// Property sweeps over small moduli. Each suite cross-checks two independent
// routes (a fast path against exhaustive search, a permutation sign against a
// symbol, a reduction against ground truth from the factorization) and
// reports the first failing instance.
//
// Bounds: max_n caps the modulus (or N = pq) a suite visits, max_k caps the
// symbol level. Unset bounds fall back to each suite's documented default.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "residuo/arithmetic.hpp"
#include "residuo/oracle.hpp"
#include "residuo/reductions.hpp"
#include "residuo/serialize.hpp"
#include "residuo/symbols.hpp"
#include "residuo/zolotarev.hpp"

namespace residuo::selftest {

struct Bounds {
  std::optional<std::uint64_t> max_n;
  std::optional<unsigned> max_k;

  std::uint64_t n_or(std::uint64_t fallback) const { return max_n.value_or(fallback); }
  unsigned k_or(unsigned fallback) const { return max_k.value_or(fallback); }
};

struct Report {
  explicit Report(std::string suite) : name(std::move(suite)) {}

  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::optional<std::string> first_failure;
  Json detail = nullptr;

  bool passed() const noexcept { return failures == 0; }

  /// Records one case; `describe` is only called for the first failure.
  template <class Describe>
  void check(bool ok, Describe&& describe) {
    ++cases;
    if (ok) return;
    ++failures;
    if (!first_failure) first_failure = std::forward<Describe>(describe)();
  }
};

inline void to_json(Json& j, const Report& r) {
  j = Json{{"name", r.name},
           {"cases", r.cases},
           {"passed", r.cases - r.failures},
           {"failed", r.failures},
           {"first_failure", r.first_failure ? Json(*r.first_failure) : Json(nullptr)}};
  if (!r.detail.is_null()) j["detail"] = r.detail;
}

namespace detail {

template <class... Parts>
std::string describe(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<char> composite(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

struct Semiprime {
  std::uint64_t p;
  std::uint64_t q;
  std::uint64_t n() const { return p * q; }
};

/// Odd N = pq with p < q and N < bound, ascending in N.
inline std::vector<Semiprime> odd_semiprimes_below(std::uint64_t bound) {
  std::vector<Semiprime> out;
  if (bound < 16) return out;
  const auto primes = primes_up_to(bound / 3);
  for (std::size_t i = 1; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size() && primes[i] * primes[j] < bound; ++j)
      out.push_back({primes[i], primes[j]});
  }
  std::sort(out.begin(), out.end(), [](const Semiprime& a, const Semiprime& b) { return a.n() < b.n(); });
  return out;
}

inline unsigned v2(std::uint64_t x) { return valuation(x, 2); }

/// Residues in [1, n) coprime to n whose (k-1)-level symbol is +1 at every
/// prime of n, i.e. the arguments for which (m|n)_{2^k} is defined.
inline std::vector<std::uint64_t> admissible_arguments(std::uint64_t n, const Factorization& f, unsigned k) {
  std::vector<ResidueClassSet> per_prime;
  for (const auto& pp : f.factors()) per_prime.push_back(residue_set(pp.prime, k - 1, true));
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 1; m < n; ++m) {
    if (residuo::detail::gcd(m, n) != 1) continue;
    bool ok = true;
    for (std::size_t i = 0; i < per_prime.size() && ok; ++i)
      ok = per_prime[i].contains(m % f.factors()[i].prime.to_u64());
    if (ok) out.push_back(m);
  }
  return out;
}

}  // namespace detail

/// mod_pow against naive repeated multiplication; base, exponent <= 100,
/// 2 <= modulus <= max_n (default 1000).
inline Report suite_mod_pow(const Bounds& b) {
  Report r{"mod_pow"};
  for (std::uint64_t mod = 2; mod <= b.n_or(1000); ++mod) {
    for (std::uint64_t base = 0; base <= 100; ++base) {
      std::uint64_t naive = 1 % mod;
      for (std::uint64_t e = 0; e <= 100; ++e) {
        // The Natural entry point is sampled; the uint64 core sees every pair.
        const std::uint64_t fast = residuo::detail::powmod(base, e, mod);
        r.check(fast == naive, [&] { return detail::describe("powmod(", base, ",", e, ",", mod, ")"); });
        if ((base + e) % 37 == 0) {
          r.check(mod_pow(base, e, mod) == naive, [&] { return detail::describe("mod_pow(", base, ",", e, ",", mod, ")"); });
        }
        naive = naive * base % mod;
      }
    }
  }
  return r;
}

/// Jacobi congruence invariance and multiplicativity on odd n <= max_n
/// (default 10^4), with 16 seeded random pairs (a, b) per modulus.
inline Report suite_jacobi(const Bounds& b) {
  Report r{"jacobi"};
  std::mt19937_64 rng(20240601);
  for (std::uint64_t n = 3; n <= b.n_or(10'000); n += 2) {
    std::uniform_int_distribution<std::uint64_t> pick(1, n - 1);
    for (int t = 0; t < 16; ++t) {
      const std::uint64_t a = pick(rng), c = pick(rng);
      if (residuo::detail::gcd(a, n) != 1 || residuo::detail::gcd(c, n) != 1) continue;
      const int ja = to_int(jacobi(a, n)), jc = to_int(jacobi(c, n));
      r.check(to_int(jacobi(Natural(a) * c, n)) == ja * jc,
              [&] { return detail::describe("jacobi(", a, "*", c, ",", n, ") not multiplicative"); });
      r.check(to_int(jacobi(a + 7 * n, n)) == ja,
              [&] { return detail::describe("jacobi(", a, "+7n,", n, ") differs from jacobi(a,n)"); });
    }
  }
  return r;
}

/// factorize reconstructs n with strictly increasing primes for 1 <= n <= max_n
/// (default 10^5).
inline Report suite_factorize(const Bounds& b) {
  Report r{"factorize"};
  for (std::uint64_t n = 1; n <= b.n_or(100'000); ++n) {
    const Factorization f = factorize(n);
    bool ok = f.value() == n;
    for (std::size_t i = 0; i < f.size() && ok; ++i) {
      ok = is_prime(f.factors()[i].prime) &&
           (i == 0 || f.factors()[i - 1].prime < f.factors()[i].prime);
    }
    r.check(ok, [&] { return detail::describe("factorize(", n, ") = ", Json(f).dump()); });
  }
  return r;
}

/// b^k | n and b^{k+1} does not divide n, for n <= max_n (default 10^5), b in {2,3,5,7}.
inline Report suite_valuation(const Bounds& b) {
  Report r{"valuation"};
  for (std::uint64_t n = 1; n <= b.n_or(100'000); ++n) {
    for (std::uint64_t base : {2, 3, 5, 7}) {
      const unsigned k = valuation(n, base);
      std::uint64_t power = 1;
      for (unsigned i = 0; i < k; ++i) power *= base;
      r.check(n % power == 0 && n % (power * base) != 0,
              [&] { return detail::describe("valuation(", n, ",", base, ") = ", k); });
    }
  }
  return r;
}

/// Euler criterion against exhaustive search: primes p <= max_n (default 500),
/// k <= max_k (default 6), every a in [1, p) meeting the precondition.
inline Report suite_euler(const Bounds& b) {
  Report r{"euler"};
  const unsigned max_k = b.k_or(6);
  for (std::uint64_t p : detail::primes_up_to(b.n_or(500))) {
    for (unsigned k = 1; k <= max_k; ++k) {
      for (std::uint64_t a = 1; a < p; ++a) {
        if (symbol_prime_definition(a, p, k - 1).is_minus()) continue;
        const Sign fast = symbol_prime_euler(a, p, k);
        r.check(fast == symbol_prime_definition(a, p, k),
                [&] { return detail::describe("euler(", a, ",", p, ",", k, ") = ", to_string(fast)); });
      }
    }
  }
  return r;
}

/// Z*_{p,2^k} = Z*_{p,2^m} for m = v2(p-1) <= k <= max_k (default 6), and
/// symbol_stabilized agrees with the unclamped definition, primes p <= max_n
/// (default 500).
inline Report suite_stabilization(const Bounds& b) {
  Report r{"stabilization"};
  const unsigned max_k = b.k_or(6);
  for (std::uint64_t p : detail::primes_up_to(b.n_or(500))) {
    const unsigned m = p == 2 ? 0 : detail::v2(p - 1);
    const ResidueClassSet base = residue_set(p, m, true);
    for (unsigned k = m; k <= max_k; ++k) {
      r.check(residue_set(p, k, true).members == base.members,
              [&] { return detail::describe("Z*_{", p, ",2^", k, "} != Z*_{", p, ",2^", m, "}"); });
    }
    for (unsigned k = 0; k <= max_k + 2; ++k) {
      for (std::uint64_t a = 1; a < p; a += (p > 60 ? 7 : 1)) {
        r.check(symbol_stabilized(a, p, k) == symbol_prime_definition(a, p, k),
                [&] { return detail::describe("stabilized(", a, ",", p, ",", k, ")"); });
      }
    }
  }
  return r;
}

/// Multiplicativity (ab|n) = (a|n)(b|n) and congruence invariance
/// (a + n|n) = (a|n) for admissible a, b; odd n <= max_n (default 1000),
/// k <= max_k (default 4), 24 seeded random pairs per (n, k).
inline Report suite_multiplicativity(const Bounds& b) {
  Report r{"multiplicativity"};
  std::mt19937_64 rng(7);
  const unsigned max_k = b.k_or(4);
  for (std::uint64_t n = 3; n <= b.n_or(1000); n += 2) {
    const Factorization f = factorize(n);
    for (unsigned k = 1; k <= max_k; ++k) {
      const auto args = detail::admissible_arguments(n, f, k);
      if (args.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, args.size() - 1);
      for (int t = 0; t < 24; ++t) {
        const std::uint64_t x = args[pick(rng)], y = args[pick(rng)];
        const Sign sx = symbol_composite(x, f, k), sy = symbol_composite(y, f, k);
        r.check(symbol_composite(Natural(x) * y, f, k) == sx * sy,
                [&] { return detail::describe("(", x, "*", y, "|", n, ")_{2^", k, "} not multiplicative"); });
        r.check(symbol_composite(x + n, f, k) == sx,
                [&] { return detail::describe("(", x, "+n|", n, ")_{2^", k, "} != (", x, "|n)"); });
      }
    }
  }
  return r;
}

/// symbol_power_shortcut(a, p, k) against the definition evaluated at
/// a^{2^{k-1}} mod p; primes p <= max_n (default 300), k <= max_k (default 5).
inline Report suite_shortcut(const Bounds& b) {
  Report r{"shortcut"};
  const unsigned max_k = b.k_or(5);
  for (std::uint64_t p : detail::primes_up_to(b.n_or(300))) {
    for (unsigned k = 1; k <= max_k; ++k) {
      for (std::uint64_t a = 1; a < p; ++a) {
        const std::uint64_t lifted = residuo::detail::powmod(a, std::uint64_t{1} << (k - 1), p);
        r.check(symbol_power_shortcut(a, p, k) == symbol_prime_definition(lifted, p, k),
                [&] { return detail::describe("shortcut(", a, ",", p, ",", k, ")"); });
      }
    }
  }
  return r;
}

/// Units-only residue sets contain 1 and are closed under multiplication; full
/// sets equal the direct image of x -> x^{2^k}. 2 <= n <= max_n (default 200),
/// k <= max_k (default 4).
inline Report suite_subgroup(const Bounds& b) {
  Report r{"subgroup"};
  const unsigned max_k = b.k_or(4);
  for (std::uint64_t n = 2; n <= b.n_or(200); ++n) {
    for (unsigned k = 0; k <= max_k; ++k) {
      const ResidueClassSet units = residue_set(n, k, true);
      bool closed = units.contains(1);
      for (std::uint64_t x : units.members) {
        for (std::uint64_t y : units.members) closed = closed && units.contains(x * y % n);
      }
      r.check(closed, [&] { return detail::describe("Z*_{", n, ",2^", k, "} not a subgroup"); });

      std::set<std::uint64_t> image;
      for (std::uint64_t x = 0; x < n; ++x) image.insert(residuo::detail::powmod(x, std::uint64_t{1} << k, n));
      const ResidueClassSet full = residue_set(n, k, false);
      r.check(std::vector<std::uint64_t>(image.begin(), image.end()) == full.members,
              [&] { return detail::describe("Z_{", n, ",2^", k, "} differs from direct image"); });
    }
  }
  return r;
}

/// symbol_composite at k = 1 equals the Jacobi symbol for odd n <= max_n
/// (default 10^4) and every a coprime to n.
inline Report suite_k1_jacobi(const Bounds& b) {
  Report r{"k1_jacobi"};
  for (std::uint64_t n = 3; n <= b.n_or(10'000); n += 2) {
    const Factorization f = factorize(n);
    for (std::uint64_t a = 1; a < n; ++a) {
      const int j = to_int(jacobi(a, n));
      if (j == 0) continue;
      r.check(symbol_composite(a, f, 1).value() == j,
              [&] { return detail::describe("(", a, "|", n, ")_2 != jacobi"); });
    }
  }
  return r;
}

/// Prime permutation characterization against the definition: odd primes
/// p <= max_n (default 200), k <= max_k (default 4), admissible a. Also checks
/// that the sign is +1 whenever k > v2(p-1).
inline Report suite_t3(const Bounds& b) {
  Report r{"t3"};
  const unsigned max_k = b.k_or(4);
  for (std::uint64_t p : detail::primes_up_to(b.n_or(200))) {
    if (p == 2) continue;
    const unsigned m = detail::v2(p - 1);
    for (unsigned k = 1; k <= max_k; ++k) {
      for (std::uint64_t a = 1; a < p; ++a) {
        if (symbol_prime_definition(a, p, k - 1).is_minus()) continue;
        const Sign sign = zolotarev_prime(a, p, k);
        r.check(sign == symbol_prime_definition(a, p, k),
                [&] { return detail::describe("zolotarev_prime(", a, ",", p, ",", k, ") = ", to_string(sign)); });
        if (k > m) {
          r.check(sign.is_plus(), [&] { return detail::describe("sign -1 above stabilization at (", a, ",", p, ",", k, ")"); });
        }
      }
    }
  }
  return r;
}

/// Semiprime permutation characterization against the composite symbol. By
/// default all odd prime pairs p < q <= 60; with max_n set, all odd N = pq <= max_n.
/// k <= max_k (default 4), every admissible m.
inline Report suite_t5(const Bounds& b) {
  Report r{"t5"};
  const unsigned max_k = b.k_or(4);
  std::vector<detail::Semiprime> pairs;
  if (b.max_n) {
    pairs = detail::odd_semiprimes_below(*b.max_n + 1);
  } else {
    const auto primes = detail::primes_up_to(60);
    for (std::size_t i = 1; i < primes.size(); ++i)
      for (std::size_t j = i + 1; j < primes.size(); ++j) pairs.push_back({primes[i], primes[j]});
  }
  for (const auto& [p, q] : pairs) {
    const std::uint64_t n = p * q;
    const Factorization f = factorize(n);
    for (unsigned k = 1; k <= max_k; ++k) {
      for (std::uint64_t m : detail::admissible_arguments(n, f, k)) {
        const Sign sign = zolotarev_semiprime(m, p, q, k);
        r.check(sign == symbol_composite(m, f, k), [&] {
          return detail::describe("zolotarev_semiprime(", m, ",", p, ",", q, ",", k, ") = ", to_string(sign));
        });
      }
    }
  }
  return r;
}

/// Jacobi symbol against the sign of x -> m*x on all of [0, n): odd n <= max_n
/// (default 500), gcd(m, n) = 1. Uses the explicit permutation table.
inline Report suite_zolotarev_jacobi(const Bounds& b) {
  Report r{"zolotarev_jacobi"};
  for (std::uint64_t n = 3; n <= b.n_or(500); n += 2) {
    ResidueClassSet everything{n, 0, false, {}};
    for (std::uint64_t x = 0; x < n; ++x) everything.members.push_back(x);
    for (std::uint64_t m = 1; m < n; ++m) {
      if (residuo::detail::gcd(m, n) != 1) continue;
      const Sign sign = permutation_sign(multiplication_permutation(m, n, everything));
      r.check(sign.value() == to_int(jacobi(m, n)),
              [&] { return detail::describe("sgn(x -> ", m, "x mod ", n, ") != jacobi"); });
    }
  }
  return r;
}

/// product_permutation_sign against the sign of the explicitly built product
/// permutation on X_1 x ... x X_l, for 400 seeded random choices of 2 or 3
/// components of size <= 6 (max_n caps the number of trials).
inline Report suite_l5(const Bounds& b) {
  Report r{"l5"};
  std::mt19937_64 rng(5);
  const std::uint64_t trials = std::min<std::uint64_t>(400, b.n_or(400));
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::size_t parts = 2 + trial % 2;
    std::vector<std::vector<std::uint64_t>> perms;
    std::vector<Sign> signs;
    std::vector<std::uint64_t> sizes;
    for (std::size_t i = 0; i < parts; ++i) {
      const std::uint64_t size = std::uniform_int_distribution<std::uint64_t>(1, 6)(rng);
      std::vector<std::uint64_t> perm(size);
      for (std::uint64_t x = 0; x < size; ++x) perm[x] = x;
      std::shuffle(perm.begin(), perm.end(), rng);
      PermutationTable t{{}, perm};
      for (std::uint64_t x = 0; x < size; ++x) t.domain.push_back(x);
      signs.push_back(permutation_sign(t));
      sizes.push_back(size);
      perms.push_back(std::move(perm));
    }
    // Mixed-radix encoding of tuples.
    std::uint64_t total = 1;
    for (auto s : sizes) total *= s;
    PermutationTable product;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t rest = code, image = 0, scale = 1;
      for (std::size_t i = 0; i < parts; ++i) {
        const std::uint64_t digit = rest % sizes[i];
        rest /= sizes[i];
        image += perms[i][digit] * scale;
        scale *= sizes[i];
      }
      product.domain.push_back(code);
      product.image.push_back(image);
    }
    const Sign expected = permutation_sign(product);
    r.check(product_permutation_sign(signs, sizes) == expected, [&] {
      return detail::describe("product sign mismatch for sizes ", Json(sizes).dump());
    });
  }
  return r;
}

/// Searches n = pqr <= max_n (default 200). Verifies every returned witness
/// independently (definition-based symbol, explicit permutation tables), that
/// a witness exists exactly when an n of the right shape does, and that every
/// m meeting the assumptions at every such n has both signs +1.
inline Report suite_counterexample(const Bounds& b) {
  Report r{"counterexample"};
  const std::uint64_t limit = b.n_or(200);
  const auto found = find_tripleprime_counterexample(limit);
  std::optional<std::uint64_t> first_shape;
  for (std::uint64_t n = 3; n <= limit; n += 2) {
    const Factorization f = factorize(n);
    if (!is_tripleprime_shape(f)) continue;
    if (!first_shape) first_shape = n;
    const ResidueClassSet units = residue_set(n, 1, true), full = residue_set(n, 1, false);
    for (std::uint64_t m = 1; m < n; ++m) {
      if (residuo::detail::gcd(m, n) != 1) continue;
      bool assumptions = true;
      for (const auto& pp : f.factors()) assumptions = assumptions && symbol_prime_definition(m, pp.prime, 1).is_plus();
      if (!assumptions) continue;
      const bool both_plus = permutation_sign(multiplication_permutation(m, n, units)).is_plus() &&
                             permutation_sign(multiplication_permutation(m, n, full)).is_plus();
      r.check(both_plus, [&] { return detail::describe("restricted sign -1 at n=", n, " m=", m); });
    }
  }
  if (limit >= 3) {
    r.check(found.has_value() == first_shape.has_value(), [&] {
      return detail::describe("search returned ", found ? "a witness" : "nothing", " up to ", limit);
    });
  }
  if (found) {
    const Factorization f = factorize(found->n);
    r.check(found->n == *first_shape, [&] { return detail::describe("witness n=", found->n, " is not the least shape"); });
    r.check(symbol_composite_definition(found->m, f, 2).is_minus(),
            [&] { return detail::describe("(", found->m, "|", found->n, ")_4 is not -1"); });
    r.detail = Json{{"n", std::to_string(found->n)}, {"m", std::to_string(found->m)}};
  }
  return r;
}

/// Valuation relation for b in {2,3,5,7} and odd primes p != q <= max_n
/// (default 200), including the strict inequality for b = 2.
inline Report suite_l2(const Bounds& b) {
  Report r{"l2"};
  const auto primes = detail::primes_up_to(b.n_or(200));
  for (std::uint64_t base : {2, 3, 5, 7}) {
    for (std::uint64_t p : primes) {
      for (std::uint64_t q : primes) {
        if (p == 2 || q == 2 || p == q) continue;
        const ValuationRecord rec = valuation_relation(base, p, q);
        r.check(rec.holds(base), [&] { return detail::describe("valuation relation fails for b=", base, " p=", p, " q=", q); });
      }
    }
  }
  return r;
}

/// The valuation algorithm with the definition oracle and deterministic search,
/// for every odd semiprime N < max_n (default 5000): valuations, low bits up
/// to swapping the factors, and the oracle-call budget.
inline Report suite_a1(const Bounds& b) {
  Report r{"a1"};
  const auto oracle = make_definition_oracle();
  for (const auto& [p, q] : detail::odd_semiprimes_below(b.n_or(5000))) {
    const std::uint64_t n = p * q;
    const unsigned vp = detail::v2(p - 1), vq = detail::v2(q - 1);
    const ValuationResult res = semiprime_valuations(n, *oracle);
    r.check(res.v_small == std::min(vp, vq) && res.v_large == std::max(vp, vq), [&] {
      return detail::describe("N=", n, ": got (", res.v_small, ",", res.v_large, "), want {", vp, ",", vq, "}");
    });
    const std::uint64_t mask = (std::uint64_t{1} << res.m) - 1;
    const std::uint64_t pb = res.p_bits.to_u64(), qb = res.q_bits.to_u64();
    r.check((pb == (p & mask) && qb == (q & mask)) || (pb == (q & mask) && qb == (p & mask)),
            [&] { return detail::describe("N=", n, ": low bits (", pb, ",", qb, ") mod 2^", res.m); });
    const std::uint64_t budget = detail::v2(n - 1) + std::max(vp, vq) + kDefaultTrialCap + 2;
    r.check(res.stats.calls_total <= budget,
            [&] { return detail::describe("N=", n, ": ", res.stats.calls_total, " oracle calls > ", budget); });
  }
  return r;
}

/// Quadratic residuosity for odd semiprimes N < max_n (default 3000) with
/// v2(p-1) != v2(q-1) and every a with (a|N)_2 = +1, against the set of
/// squares mod N; for N = 3 mod 4 also the k = 2 and permutation criteria.
inline Report suite_qrp(const Bounds& b) {
  Report r{"qrp"};
  const auto oracle = make_factor_oracle();
  for (const auto& [p, q] : detail::odd_semiprimes_below(b.n_or(3000))) {
    if (detail::v2(p - 1) == detail::v2(q - 1)) continue;
    const std::uint64_t n = p * q;
    std::vector<char> square(n, 0);
    for (std::uint64_t x = 0; x < n; ++x) square[x * x % n] = 1;
    for (std::uint64_t a = 1; a < n; ++a) {
      if (jacobi(a, n) != JacobiValue::plus_one) continue;
      const bool truth = square[a] != 0;
      r.check(qrp_decide(n, a, *oracle).is_residue == truth,
              [&] { return detail::describe("qrp_decide(", n, ",", a, ") wrong"); });
      if (n % 4 == 3) {
        r.check(qrp_decide_c2(n, a, *oracle).is_residue == truth,
                [&] { return detail::describe("qrp_decide_c2(", n, ",", a, ") wrong"); });
        r.check(qrp_decide_permutation(n, a).is_residue == truth,
                [&] { return detail::describe("qrp_decide_permutation(", n, ",", a, ") wrong"); });
      }
    }
  }
  return r;
}

/// For every N < max_n (default 3000) that is a sum of two squares and every
/// unit a, (a|N)_2 = (a^2|N)_4.
inline Report suite_l4(const Bounds& b) {
  Report r{"l4"};
  const auto oracle = make_factor_oracle(true);
  for (std::uint64_t n = 2; n < b.n_or(3000); ++n) {
    const Factorization f = factorize(n);
    if (!two_squares_fermat(f).solvable) continue;
    oracle->provide(f);
    for (std::uint64_t a = 1; a < n; ++a) {
      if (residuo::detail::gcd(a, n) != 1) continue;
      r.check(lemma_l4_check(n, a, *oracle), [&] { return detail::describe("lemma_l4_check(", n, ",", a, ") false"); });
    }
  }
  return r;
}

/// Oracle two-squares reduction (deterministic, floor 50) against the
/// factorization verdict for 2 <= N < max_n (default 10^4).
inline Report suite_two_squares(const Bounds& b) {
  Report r{"two_squares"};
  const auto oracle = make_factor_oracle();
  for (std::uint64_t n = 2; n < b.n_or(10'000); ++n) {
    const bool truth = two_squares_fermat(factorize(n)).solvable;
    const bool got = two_squares_oracle(n, *oracle, TwoSquaresMode::deterministic, 1, 50).solvable;
    r.check(got == truth, [&] { return detail::describe("two_squares_oracle(", n, ") = ", got); });
  }
  return r;
}

/// Factor, definition and permutation oracles agree on every admissible
/// (m, n, k) with n <= max_n (default 2000) prime or an odd semiprime with
/// distinct factors, k <= max_k (default 4).
inline Report suite_oracles(const Bounds& b) {
  Report r{"oracles"};
  const auto factor = make_factor_oracle();
  const auto definition = make_definition_oracle();
  const auto zolotarev = make_zolotarev_oracle();
  const unsigned max_k = b.k_or(4);
  for (std::uint64_t n = 2; n <= b.n_or(2000); ++n) {
    const Factorization f = factorize(n);
    const bool prime = f.size() == 1 && f.factors()[0].exponent == 1;
    if (!prime && !(f.is_squarefree_semiprime() && n % 2 == 1)) continue;
    for (unsigned k = 1; k <= max_k; ++k) {
      for (std::uint64_t m : detail::admissible_arguments(n, f, k)) {
        const Sign s1 = factor->query(m, n, k);
        const Sign s2 = definition->query(m, n, k);
        const Sign s3 = zolotarev->query(m, n, k);
        r.check(s1 == s2 && s2 == s3, [&] {
          return detail::describe("oracles disagree on (", m, "|", n, ")_{2^", k, "}: ", to_string(s1), " ",
                                  to_string(s2), " ", to_string(s3));
        });
      }
    }
  }
  return r;
}

/// Probabilistic two-squares on N = 11021 (or max_n, if given) with 20 trials
/// for seeds 1..100: at least 99 runs must report unsolvable. Only meaningful
/// for N that is not a sum of two squares.
inline Report suite_probabilistic(const Bounds& b) {
  Report r{"probabilistic"};
  const Natural n = b.n_or(11021);
  if (n < 2) return r;
  const auto oracle = make_factor_oracle();
  const bool truth = two_squares_fermat(factorize(n)).solvable;
  std::uint64_t correct = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto v = two_squares_oracle(n, *oracle, TwoSquaresMode::probabilistic, 20, 0, seed);
    if (v.solvable == truth) ++correct;
  }
  r.check(correct >= 99, [&] { return detail::describe(correct, "/100 seeded runs correct on N=", n); });
  r.detail = Json{{"n", n}, {"correct_runs", correct}, {"runs", 100}};
  return r;
}

using SuiteFn = Report (*)(const Bounds&);

inline const std::vector<std::pair<std::string_view, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string_view, SuiteFn>> suites = {
      {"mod_pow", suite_mod_pow},
      {"jacobi", suite_jacobi},
      {"factorize", suite_factorize},
      {"valuation", suite_valuation},
      {"euler", suite_euler},
      {"stabilization", suite_stabilization},
      {"multiplicativity", suite_multiplicativity},
      {"shortcut", suite_shortcut},
      {"subgroup", suite_subgroup},
      {"k1_jacobi", suite_k1_jacobi},
      {"t3", suite_t3},
      {"t5", suite_t5},
      {"zolotarev_jacobi", suite_zolotarev_jacobi},
      {"l5", suite_l5},
      {"counterexample", suite_counterexample},
      {"l2", suite_l2},
      {"a1", suite_a1},
      {"qrp", suite_qrp},
      {"l4", suite_l4},
      {"two_squares", suite_two_squares},
      {"oracles", suite_oracles},
      {"probabilistic", suite_probabilistic},
  };
  return suites;
}

inline Report run(std::string_view name, const Bounds& bounds) {
  for (const auto& [suite_name, fn] : registry()) {
    if (suite_name == name) return fn(bounds);
  }
  fail(Errc::invalid_input, "unknown selftest suite '" + std::string(name) + "'");
}

}  // namespace residuo::selftest

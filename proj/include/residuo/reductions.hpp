#pragma once

// Reductions to an abstract CRS oracle:
//   * deciding whether N = X^2 + Y^2 is solvable,
//   * computing v2(p-1), v2(q-1) (and so the low bits of p, q) for N = pq,
//   * quadratic residuosity modulo N = pq when v2(p-1) != v2(q-1).
// Each run wraps the injected oracle in a TracingOracle and reports the
// queries it issued.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "residuo/arithmetic.hpp"
#include "residuo/error.hpp"
#include "residuo/oracle.hpp"
#include "residuo/symbols.hpp"
#include "residuo/zolotarev.hpp"

namespace residuo {

enum class SearchStrategy { deterministic_enum, seeded_random };
enum class TwoSquaresMode { deterministic, probabilistic };
enum class TwoSquaresMethod { fermat_factorization, oracle_deterministic, oracle_probabilistic };
enum class QrpMethod { lifted_symbol, squared_symbol, permutation_sign, bruteforce };

// Wire names; they are part of the JSON schema.
constexpr std::string_view to_string(TwoSquaresMethod m) noexcept {
  switch (m) {
    case TwoSquaresMethod::fermat_factorization: return "fermat_factorization";
    case TwoSquaresMethod::oracle_deterministic: return "oracle_deterministic";
    case TwoSquaresMethod::oracle_probabilistic: return "oracle_probabilistic";
  }
  return "";
}

constexpr std::string_view to_string(QrpMethod m) noexcept {
  switch (m) {
    case QrpMethod::lifted_symbol: return "theorem_t4";
    case QrpMethod::squared_symbol: return "corollary_c2";
    case QrpMethod::permutation_sign: return "corollary_c3";
    case QrpMethod::bruteforce: return "bruteforce";
  }
  return "";
}

constexpr std::string_view to_string(SearchStrategy s) noexcept {
  return s == SearchStrategy::deterministic_enum ? "deterministic_enum" : "seeded_random";
}

struct TwoSquaresVerdict {
  Natural n;
  bool solvable = false;
  TwoSquaresMethod method = TwoSquaresMethod::fermat_factorization;
  /// A prime 3 mod 4 dividing n to an odd power.
  std::optional<Natural> certificate;
  /// X <= Y with X^2 + Y^2 = n.
  std::optional<std::pair<Natural, Natural>> witness;
  /// The base a at which (a^2|N')_4 != (a|N')_2 was observed.
  std::optional<Natural> failing_base;
  std::optional<std::uint64_t> seed;
  std::optional<OracleStats> oracle_stats;
};

struct LowBits {
  unsigned m = 0;
  Natural p_bits;
  Natural q_bits;

  friend bool operator==(const LowBits&, const LowBits&) = default;
};

struct ValuationResult {
  Natural n;
  unsigned v_small = 0;
  unsigned v_large = 0;
  unsigned m = 0;
  Natural p_bits;
  Natural q_bits;
  SearchStrategy search = SearchStrategy::deterministic_enum;
  std::optional<std::uint64_t> seed;
  OracleStats stats;
};

struct QrpVerdict {
  Natural n;
  Natural a;
  bool is_residue = false;
  QrpMethod method = QrpMethod::lifted_symbol;
  std::optional<OracleStats> oracle_stats;
};

/// Uniform value in [0, bound) by rejection sampling on bit strings.
template <class Engine>
Natural uniform_below(Engine& engine, const Natural& bound) {
  if (bound.is_zero()) fail(Errc::invalid_input, "empty sampling range");
  const std::size_t bits = bound.bit_length();
  for (;;) {
    BigInt r = 0;
    for (std::size_t have = 0; have < bits; have += 64) r = (r << 64) | BigInt(engine());
    r >>= static_cast<unsigned>(((bits + 63) / 64) * 64 - bits);
    if (r < bound.big()) return Natural(std::move(r));
  }
}

/// Candidate bases coprime to n. Deterministic mode yields 2, 3, 5, 6, 7, 8,
/// 10, ... (perfect squares skipped: their Jacobi symbol is always +1) and
/// runs dry at n; seeded mode draws uniformly from the units of n.
class CandidateStream {
 public:
  CandidateStream(Natural n, SearchStrategy strategy, std::uint64_t seed)
      : n_(std::move(n)), strategy_(strategy), engine_(seed) {}

  std::optional<Natural> next() {
    if (strategy_ == SearchStrategy::seeded_random) {
      if (n_ < 2) return std::nullopt;
      for (;;) {
        Natural a = uniform_below(engine_, n_ - 1) + 1;
        if (gcd(a, n_) == 1) return a;
      }
    }
    while (next_ < n_) {
      Natural a = next_;
      next_ += 1;
      if (!is_perfect_square(a) && gcd(a, n_) == 1) return a;
    }
    return std::nullopt;
  }

 private:
  Natural n_;
  SearchStrategy strategy_;
  std::mt19937_64 engine_;
  Natural next_ = 2;
};

/// Natural logarithm of a positive Natural, in double precision.
inline double natural_log(const Natural& n) {
  if (n.is_zero()) fail(Errc::invalid_input, "log of 0");
  const std::size_t bits = n.bit_length();
  const unsigned shift = bits > 64 ? static_cast<unsigned>(bits - 64) : 0U;
  return std::log(static_cast<double>((n >> shift).to_u64())) + shift * std::log(2.0);
}

/// ERH bound on the least quadratic nonresidue: 1.5 ln^2 N - 8.8 ln N + 13.
inline double wedeniwski_bound(const Natural& n) {
  if (n < 3) fail(Errc::invalid_input, "bound is defined for N >= 3");
  const double l = natural_log(n);
  return 1.5 * l * l - 8.8 * l + 13.0;
}

/// Primes strictly below max(wedeniwski_bound(n), floor), ascending.
inline std::vector<Natural> candidate_prime_set(const Natural& n, const Natural& floor) {
  double limit = n >= 3 ? wedeniwski_bound(n) : 0.0;
  const double floor_d = floor.fits_u64() ? static_cast<double>(floor.to_u64()) : HUGE_VAL;
  limit = std::max(limit, floor_d);
  if (!(limit <= static_cast<double>(kEnumerationLimit)))
    fail(Errc::search_space_too_large, "candidate prime bound exceeds enumeration limit");
  std::vector<Natural> primes;
  for (std::uint64_t p = 2; static_cast<double>(p) < limit; ++p) {
    if (detail::is_prime_u64(p)) primes.emplace_back(p);
  }
  return primes;
}

inline constexpr std::uint64_t kWitnessSearchLimit = 1'000'000'000'000ULL;

/// Some X <= Y with X^2 + Y^2 = n, by scanning X; nullopt when none exists or
/// n is above kWitnessSearchLimit.
inline std::optional<std::pair<Natural, Natural>> two_squares_witness(const Natural& n) {
  if (n > kWitnessSearchLimit) return std::nullopt;
  const std::uint64_t nn = n.to_u64();
  for (std::uint64_t x = 0; 2 * x * x <= nn; ++x) {
    const Natural rest = nn - x * x;
    if (is_perfect_square(rest)) return std::pair{Natural(x), isqrt(rest)};
  }
  return std::nullopt;
}

/// Ground truth from the factorization: solvable iff every prime 3 mod 4
/// occurs to an even power. The certificate is the least offending prime.
inline TwoSquaresVerdict two_squares_fermat(const Factorization& n_fact, bool with_witness = false) {
  TwoSquaresVerdict v;
  v.n = n_fact.value();
  v.method = TwoSquaresMethod::fermat_factorization;
  v.solvable = true;
  for (const auto& f : n_fact.factors()) {
    if ((f.prime % 4) == 3 && f.exponent % 2 == 1) {
      v.solvable = false;
      v.certificate = f.prime;
      break;
    }
  }
  if (v.solvable && with_witness) v.witness = two_squares_witness(v.n);
  return v;
}

/// True iff (a|N)_2 = (a^2|N)_4, using one k=1 and one k=2 query. This always
/// holds when N is a sum of two squares.
inline bool lemma_l4_check(const Natural& n, const Natural& a, CrsOracle& oracle) {
  if (gcd(n, a) != 1) fail(Errc::not_coprime, a.str() + " is not coprime to " + n.str());
  const Sign quadratic = oracle.query(a, n, 1);
  const Sign biquadratic = oracle.query(a * a % n, n, 2);
  return quadratic == biquadratic;
}

/// Two-squares solvability through the oracle.
///
/// Every prime below max(bound, floor) is first divided out; an offending
/// prime 3 mod 4 at odd multiplicity settles the answer. On the remaining
/// cofactor N', deterministic mode compares (a|N')_2 with (a^2|N')_4 for each
/// of those primes a, probabilistic mode for `trials` random units a.
inline TwoSquaresVerdict two_squares_oracle(const Natural& n, CrsOracle& oracle, TwoSquaresMode mode,
                                            std::uint64_t trials, const Natural& floor, std::uint64_t seed = 1,
                                            bool with_witness = false) {
  if (n < 2) fail(Errc::invalid_input, "two-squares reduction needs N >= 2");
  TracingOracle traced(oracle);
  TwoSquaresVerdict v;
  v.n = n;
  v.method = mode == TwoSquaresMode::deterministic ? TwoSquaresMethod::oracle_deterministic
                                                   : TwoSquaresMethod::oracle_probabilistic;
  if (mode == TwoSquaresMode::probabilistic) v.seed = seed;
  auto finish = [&](bool solvable) {
    v.solvable = solvable;
    v.oracle_stats = traced.stats();
    if (solvable && with_witness) v.witness = two_squares_witness(n);
    return v;
  };

  const std::vector<Natural> primes = candidate_prime_set(n, floor);
  Natural rest = n;
  for (const Natural& p : primes) {
    unsigned e = 0;
    while ((rest % p).is_zero()) {
      rest /= p;
      ++e;
    }
    if (e % 2 == 1 && (p % 4) == 3) {
      v.certificate = p;
      return finish(false);
    }
  }
  if (rest == 1) return finish(true);

  if (mode == TwoSquaresMode::deterministic) {
    for (const Natural& a : primes) {
      if (!lemma_l4_check(rest, a, traced)) {
        v.failing_base = a;
        return finish(false);
      }
    }
    return finish(true);
  }

  CandidateStream draws(rest, SearchStrategy::seeded_random, seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto a = draws.next();
    if (!a) break;
    if (!lemma_l4_check(rest, *a, traced)) {
      v.failing_base = *a;
      return finish(false);
    }
  }
  return finish(true);
}

/// p mod 2^m and q mod 2^m for m = v_large + 1. The factor with the larger
/// valuation is q = 1 + 2^{v_large} mod 2^m; p follows from N * q^{-1}.
inline LowBits recover_low_bits(const Natural& n, unsigned v_small, unsigned v_large) {
  if (n.is_even()) fail(Errc::invalid_input, "N must be odd");
  if (v_small > v_large) fail(Errc::invalid_input, "v_small exceeds v_large");
  if (v_small == 0) fail(Errc::invalid_input, "odd primes have v2(p-1) >= 1");
  LowBits bits;
  bits.m = v_large + 1;
  const Natural modulus = pow2(bits.m);
  bits.q_bits = (pow2(v_large) + 1) % modulus;
  bits.p_bits = n * mod_inverse(bits.q_bits, modulus) % modulus;
  return bits;
}

inline constexpr std::uint64_t kDefaultTrialCap = 128;

/// v2(p-1) and v2(q-1) for N = pq from CRS queries alone.
///
///  1. v = v2(N-1).
///  2. Find a with (a|N)_2 = -1 (Jacobi symbol, no oracle call).
///  3. s_i = (a^{2^{i-1}}|N)_{2^i} for i = 1..v; the first s_j = +1 gives
///     v_small = v_large = j-1. If none, v_small = v.
///  4. Find b with (b^{2^v}|N)_{2^{v+1}} = -1.
///  5. s_i = (b^{2^{i-1}}|N)_{2^i} for i >= v+1; the first s_j = +1 gives
///     v_large = j-1.
/// Steps 2 and 4 try at most trial_cap candidates each.
inline ValuationResult semiprime_valuations(const Natural& n, CrsOracle& oracle,
                                            SearchStrategy search = SearchStrategy::deterministic_enum,
                                            std::uint64_t trial_cap = kDefaultTrialCap, std::uint64_t seed = 1) {
  if (n < 3 || n.is_even()) fail(Errc::invalid_input, "N must be an odd semiprime, got " + n.str());
  if (trial_cap == 0) fail(Errc::invalid_input, "trial cap must be positive");
  TracingOracle traced(oracle);
  ValuationResult result;
  result.n = n;
  result.search = search;
  if (search == SearchStrategy::seeded_random) result.seed = seed;

  auto finish = [&](unsigned v_small, unsigned v_large) {
    result.v_small = v_small;
    result.v_large = v_large;
    const LowBits bits = recover_low_bits(n, v_small, v_large);
    result.m = bits.m;
    result.p_bits = bits.p_bits;
    result.q_bits = bits.q_bits;
    result.stats = traced.stats();
    return result;
  };

  // Step 1
  const unsigned v = valuation(n - 1, 2);

  // Step 2
  CandidateStream candidates(n, search, seed);
  std::optional<Natural> a;
  for (std::uint64_t tried = 0; tried < trial_cap && !a; ++tried) {
    auto c = candidates.next();
    if (!c) break;
    if (jacobi(*c, n) == JacobiValue::minus_one) a = std::move(c);
  }
  if (!a) fail(Errc::search_exhausted, "no a with (a|N)_2 = -1 within " + std::to_string(trial_cap) + " candidates");

  // Step 3
  Natural power = *a;  // a^{2^{i-1}} mod N
  for (unsigned i = 1; i <= v; ++i) {
    if (traced.query(power, n, i).is_plus()) return finish(i - 1, i - 1);
    power = power * power % n;
  }

  // Step 4. Deterministic enumeration restarts at 2; random draws continue.
  CandidateStream b_candidates =
      search == SearchStrategy::deterministic_enum ? CandidateStream(n, search, seed) : candidates;
  std::optional<Natural> b;
  for (std::uint64_t tried = 0; tried < trial_cap && !b; ++tried) {
    auto c = b_candidates.next();
    if (!c) break;
    const Natural lifted = mod_pow(*c, pow2(v), n);
    if (traced.query(lifted, n, v + 1).is_minus()) b = std::move(c);
  }
  if (!b)
    fail(Errc::search_exhausted,
         "no b with (b^{2^v}|N)_{2^{v+1}} = -1 within " + std::to_string(trial_cap) + " candidates");

  // Step 5. v2(q-1) < log2 N, so the scan is bounded by the bit length.
  power = mod_pow(*b, pow2(v), n);  // b^{2^{i-1}} mod N
  const auto last = static_cast<unsigned>(n.bit_length()) + 1;
  for (unsigned i = v + 1; i <= last; ++i) {
    if (traced.query(power, n, i).is_plus()) return finish(v, i - 1);
    power = power * power % n;
  }
  fail(Errc::search_exhausted, "step 5 found no s_j = +1 below level " + std::to_string(last));
}

namespace detail {

inline void require_jacobi_plus(const Natural& n, const Natural& a) {
  if (n.is_even() || n < 3) fail(Errc::invalid_input, "N must be an odd semiprime, got " + n.str());
  if (jacobi(a, n) != JacobiValue::plus_one)
    fail(Errc::invalid_input, "(" + a.str() + "|" + n.str() + ")_2 must be +1");
}

inline void require_three_mod_four(const Natural& n) {
  if ((n % 4) != 3) fail(Errc::invalid_input, n.str() + " is not 3 mod 4");
}

}  // namespace detail

/// a is a square mod N iff (a^{2^v}|N)_{2^{v+1}} = +1 with v = v2(N-1).
/// Only valid when v2(p-1) != v2(q-1), which cannot be checked without the
/// factors; outside that hypothesis the verdict is unreliable.
inline QrpVerdict qrp_decide(const Natural& n, const Natural& a, CrsOracle& oracle) {
  detail::require_jacobi_plus(n, a);
  TracingOracle traced(oracle);
  const unsigned v = valuation(n - 1, 2);
  const bool residue = traced.query(mod_pow(a, pow2(v), n), n, v + 1).is_plus();
  return QrpVerdict{n, a, residue, QrpMethod::lifted_symbol, traced.stats()};
}

/// For N = 3 mod 4: a is a square mod N iff (a^2|N)_4 = +1.
inline QrpVerdict qrp_decide_c2(const Natural& n, const Natural& a, CrsOracle& oracle) {
  detail::require_three_mod_four(n);
  detail::require_jacobi_plus(n, a);
  TracingOracle traced(oracle);
  const bool residue = traced.query(a * a % n, n, 2).is_plus();
  return QrpVerdict{n, a, residue, QrpMethod::squared_symbol, traced.stats()};
}

inline constexpr std::uint64_t kPermutationModulusLimit = 100'000;

/// For N = 3 mod 4: a is a square mod N iff multiplication by a^2 is an even
/// permutation of the squares Z*_{N,2}.
inline QrpVerdict qrp_decide_permutation(const Natural& n, const Natural& a) {
  detail::enumerable(n, kPermutationModulusLimit, "modulus");
  detail::require_three_mod_four(n);
  detail::require_jacobi_plus(n, a);
  const ResidueClassSet squares = residue_set(n, 1, true);
  const bool residue = permutation_sign(multiplication_permutation(a * a % n, n, squares)).is_plus();
  return QrpVerdict{n, a, residue, QrpMethod::permutation_sign, std::nullopt};
}

/// Exhaustive search for x with x^2 = a mod N.
inline QrpVerdict qrp_bruteforce(const Natural& n, const Natural& a) {
  const std::uint64_t nn = detail::enumerable(n, kEnumerationLimit, "modulus");
  if (nn == 0) fail(Errc::invalid_modulus, "modulus must be positive");
  const std::uint64_t target = (a % n).to_u64();
  bool residue = false;
  for (std::uint64_t x = 0; x < nn && !residue; ++x) residue = detail::mulmod(x, x, nn) == target;
  return QrpVerdict{n, a, residue, QrpMethod::bruteforce, std::nullopt};
}

enum class ValuationRelation { strict_equal_case, less_than_case };

constexpr std::string_view to_string(ValuationRelation r) noexcept {
  return r == ValuationRelation::strict_equal_case ? "strict_equal_case" : "less_than_case";
}

/// The b-adic valuations of p-1, q-1 and N-1 for N = pq.
///
/// strict_equal_case: v_p != v_q, and then min(v_p, v_q) = v_N.
/// less_than_case: v_p == v_q, and then v_p <= v_N (strictly, for b = 2).
struct ValuationRecord {
  unsigned v_p = 0;
  unsigned v_q = 0;
  unsigned v_n = 0;
  ValuationRelation relation = ValuationRelation::strict_equal_case;

  /// Whether the relation the case promises actually holds.
  bool holds(const Natural& base) const {
    if (relation == ValuationRelation::strict_equal_case) return std::min(v_p, v_q) == v_n;
    return base == 2 ? v_p < v_n : v_p <= v_n;
  }
};

inline ValuationRecord valuation_relation(const Natural& base, const Natural& p, const Natural& q) {
  if (p == q) fail(Errc::invalid_input, "p and q must differ");
  ValuationRecord r;
  r.v_p = valuation(p - 1, base);
  r.v_q = valuation(q - 1, base);
  r.v_n = valuation(p * q - 1, base);
  r.relation = r.v_p == r.v_q ? ValuationRelation::less_than_case : ValuationRelation::strict_equal_case;
  return r;
}

}  // namespace residuo

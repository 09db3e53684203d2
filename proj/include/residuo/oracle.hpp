#pragma once

// Oracles for CRS(k): given coprime m, n with (m|p)_{2^{k-1}} = +1 at every
// prime p of n, return (m|n)_{2^k}. Reductions take an oracle by reference and
// never look at how it answers.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "residuo/arithmetic.hpp"
#include "residuo/error.hpp"
#include "residuo/symbols.hpp"
#include "residuo/zolotarev.hpp"

namespace residuo {

struct OracleStats {
  std::uint64_t calls_total = 0;
  std::map<unsigned, std::uint64_t> calls_by_k;
  unsigned max_k_seen = 0;

  friend bool operator==(const OracleStats&, const OracleStats&) = default;
};

/// Base class for every oracle. query() is the only entry point; it counts the
/// call, validates the arguments, reduces m modulo n and forwards to evaluate().
/// Counters only change through query() and reset_stats().
class CrsOracle {
 public:
  CrsOracle() = default;
  CrsOracle(const CrsOracle&) = delete;
  CrsOracle& operator=(const CrsOracle&) = delete;
  virtual ~CrsOracle() = default;

  Sign query(const Natural& m, const Natural& n, unsigned k) {
    record(k);
    if (k == 0) fail(Errc::invalid_input, "CRS queries need k >= 1");
    if (n.is_zero()) fail(Errc::invalid_modulus, "modulus must be positive");
    if (gcd(m, n) != 1) fail(Errc::not_coprime, m.str() + " is not coprime to " + n.str());
    return evaluate(m % n, n, k);
  }

  OracleStats stats() const {
    std::lock_guard lock(mutex_);
    return stats_;
  }

  void reset_stats() {
    std::lock_guard lock(mutex_);
    stats_ = {};
  }

  virtual std::string_view name() const = 0;

 protected:
  /// m is already reduced modulo n and coprime to it; k >= 1.
  virtual Sign evaluate(const Natural& m, const Natural& n, unsigned k) = 0;

 private:
  void record(unsigned k) {
    std::lock_guard lock(mutex_);
    ++stats_.calls_total;
    ++stats_.calls_by_k[k];
    stats_.max_k_seen = std::max(stats_.max_k_seen, k);
  }

  mutable std::mutex mutex_;
  OracleStats stats_;
};

/// Factors n and applies the Euler criterion prime by prime. In trusted mode,
/// factorizations handed to provide() are used as-is instead of factoring.
class FactorOracle final : public CrsOracle {
 public:
  explicit FactorOracle(bool trusted_factorizations) : trusted_(trusted_factorizations) {}

  void provide(Factorization f) {
    std::lock_guard lock(mutex_);
    Natural key = f.value();
    known_.insert_or_assign(std::move(key), std::move(f));
  }

  std::string_view name() const override { return "factor"; }

 protected:
  Sign evaluate(const Natural& m, const Natural& n, unsigned k) override {
    return symbol_composite(m, factorization_of(n), k);
  }

 private:
  Factorization factorization_of(const Natural& n) {
    if (trusted_) {
      std::lock_guard lock(mutex_);
      if (auto it = known_.find(n); it != known_.end()) return it->second;
    }
    return factorize(n);
  }

  bool trusted_;
  std::mutex mutex_;
  std::map<Natural, Factorization> known_;
};

/// Exhaustive search for 2^k-th roots at every prime of n.
class DefinitionOracle final : public CrsOracle {
 public:
  std::string_view name() const override { return "definition"; }

 protected:
  Sign evaluate(const Natural& m, const Natural& n, unsigned k) override {
    return symbol_composite_definition(m, factorize(n), k);
  }
};

/// Permutation signs; n must be prime or a product of two distinct odd primes.
class ZolotarevOracle final : public CrsOracle {
 public:
  static constexpr std::uint64_t kModulusLimit = 100'000;

  std::string_view name() const override { return "zolotarev"; }

 protected:
  Sign evaluate(const Natural& m, const Natural& n, unsigned k) override {
    detail::enumerable(n, kModulusLimit, "modulus");
    const Factorization f = factorize(n);
    if (f.size() == 1 && f.factors()[0].exponent == 1) return zolotarev_prime(m, n, k);
    if (f.is_squarefree_semiprime() && f.factors()[0].prime != 2)
      return zolotarev_semiprime(m, f.factors()[0].prime, f.factors()[1].prime, k);
    fail(Errc::not_admissible_modulus, n.str() + " is neither prime nor a product of two distinct odd primes");
  }
};

/// Forwards to another oracle and keeps its own counters, so a single run
/// can report exactly the queries it issued.
class TracingOracle final : public CrsOracle {
 public:
  explicit TracingOracle(CrsOracle& inner) : inner_(inner) {}

  std::string_view name() const override { return inner_.name(); }

 protected:
  Sign evaluate(const Natural& m, const Natural& n, unsigned k) override { return inner_.query(m, n, k); }

 private:
  CrsOracle& inner_;
};

inline Sign crs_query(CrsOracle& oracle, const Natural& m, const Natural& n, unsigned k) {
  return oracle.query(m, n, k);
}

inline std::unique_ptr<FactorOracle> make_factor_oracle(bool trusted_factorizations = false) {
  return std::make_unique<FactorOracle>(trusted_factorizations);
}
inline std::unique_ptr<DefinitionOracle> make_definition_oracle() { return std::make_unique<DefinitionOracle>(); }
inline std::unique_ptr<ZolotarevOracle> make_zolotarev_oracle() { return std::make_unique<ZolotarevOracle>(); }

/// Builds an oracle from its name: "factor", "definition" or "zolotarev".
inline std::unique_ptr<CrsOracle> make_oracle(std::string_view name) {
  if (name == "factor") return make_factor_oracle();
  if (name == "definition") return make_definition_oracle();
  if (name == "zolotarev") return make_zolotarev_oracle();
  fail(Errc::invalid_input, "unknown oracle '" + std::string(name) + "'");
}

}  // namespace residuo

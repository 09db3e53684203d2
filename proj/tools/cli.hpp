#pragma once

// Command-line front end. run() is the whole program minus process plumbing,
// so tests can drive it in-process with string streams.
//
// Exit codes: 0 success, 1 error, 2 precondition violation.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "residuo/arithmetic.hpp"
#include "residuo/error.hpp"
#include "residuo/oracle.hpp"
#include "residuo/reductions.hpp"
#include "residuo/selftest.hpp"
#include "residuo/serialize.hpp"
#include "residuo/symbols.hpp"

namespace residuo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitPrecondition = 2;

struct RunRecord {
  std::string command;
  Json inputs = Json::object();
  Json result = nullptr;
  std::optional<std::uint64_t> seed;
  std::optional<OracleStats> oracle_stats;
  std::int64_t elapsed_ms = 0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline void to_json(Json& j, const RunRecord& r) {
  j = Json{{"command", r.command},
           {"inputs", r.inputs},
           {"result", r.result},
           {"seed", r.seed ? Json(*r.seed) : Json(nullptr)},
           {"oracle_stats", r.oracle_stats ? Json(*r.oracle_stats) : Json(nullptr)},
           {"elapsed_ms", r.elapsed_ms}};
}

inline void from_json(const Json& j, RunRecord& r) {
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.result = j.at("result");
  r.seed = j.at("seed").is_null() ? std::nullopt : std::optional(j.at("seed").get<std::uint64_t>());
  r.oracle_stats =
      j.at("oracle_stats").is_null() ? std::nullopt : std::optional(j.at("oracle_stats").get<OracleStats>());
  r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
}

namespace detail {

inline std::uint64_t parse_seed(const std::string& text, const char* source) {
  try {
    const Natural n = Natural::parse(text);
    return n.to_u64();
  } catch (const Error&) {
    fail(Errc::invalid_input, std::string(source) + " is not a 64-bit unsigned integer: '" + text + "'");
  }
}

// Flags shared by commands that accept an oracle and a seed.
struct Common {
  std::string oracle = "factor";
  std::optional<std::string> seed;
};

}  // namespace detail

/// Runs one command line. `env_seed` stands in for RESIDUO_SEED.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               std::optional<std::string> env_seed = std::nullopt) {
  CLI::App app{"2^k-th power residue symbols and the reductions built on them", "residuo"};
  app.require_subcommand(1);
  bool record = false;
  app.add_flag("--record", record, "print the full run record instead of the bare result");

  RunRecord rec;
  std::function<void()> action;
  detail::Common common;

  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", common.seed, "seed (overrides RESIDUO_SEED)"); };
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_option("--oracle", common.oracle, "CRS oracle")
        ->check(CLI::IsMember({"factor", "definition", "zolotarev"}));
  };

  // symbol
  std::string sym_a, sym_n, sym_method = "factor";
  unsigned sym_k = 1;
  auto* symbol = app.add_subcommand("symbol", "evaluate (a|n)_{2^k}");
  symbol->add_option("--a", sym_a)->required();
  symbol->add_option("--n", sym_n)->required();
  symbol->add_option("--k", sym_k)->required();
  symbol->add_option("--method", sym_method)->check(CLI::IsMember({"factor", "euler", "definition", "zolotarev"}));
  symbol->callback([&] {
    action = [&] {
      const Natural a = Natural::parse(sym_a), n = Natural::parse(sym_n);
      rec.inputs = Json{{"a", a}, {"n", n}, {"k", sym_k}, {"method", sym_method}};
      if (n.is_zero()) fail(Errc::invalid_modulus, "modulus must be positive");
      if (gcd(a, n) != 1) fail(Errc::not_coprime, a.str() + " is not coprime to " + n.str());
      Sign s = Sign::plus();
      if (sym_method == "euler") {
        s = symbol_prime_euler(a, n, sym_k);
      } else if (sym_method == "definition") {
        s = symbol_composite_definition(a, factorize(n), sym_k);
      } else if (sym_method == "zolotarev") {
        if (sym_k == 0) fail(Errc::invalid_input, "the permutation route needs k >= 1");
        auto oracle = make_zolotarev_oracle();
        s = oracle->query(a, n, sym_k);
        rec.oracle_stats = oracle->stats();
      } else {
        s = symbol_composite(a, factorize(n), sym_k);
      }
      rec.result = Json{{"symbol", s}};
    };
  });

  // subgroup
  std::string sub_n;
  unsigned sub_k = 0;
  bool sub_units = false;
  auto* subgroup = app.add_subcommand("subgroup", "list the 2^k-th powers modulo n");
  subgroup->add_option("--n", sub_n)->required();
  subgroup->add_option("--k", sub_k)->required();
  subgroup->add_flag("--units", sub_units, "units only");
  subgroup->callback([&] {
    action = [&] {
      const Natural n = Natural::parse(sub_n);
      rec.inputs = Json{{"n", n}, {"k", sub_k}, {"units", sub_units}};
      rec.result = residue_set(n, sub_k, sub_units);
    };
  });

  // two-squares
  std::string ts_n, ts_mode = "deterministic", ts_method = "oracle", ts_floor = "50";
  std::uint64_t ts_trials = 20;
  auto* two_squares = app.add_subcommand("two-squares", "decide whether N = X^2 + Y^2");
  two_squares->add_option("--n", ts_n)->required();
  two_squares->add_option("--mode", ts_mode)->check(CLI::IsMember({"deterministic", "probabilistic"}));
  two_squares->add_option("--trials", ts_trials);
  two_squares->add_option("--floor", ts_floor, "minimum size of the candidate prime set");
  two_squares->add_option("--method", ts_method)->check(CLI::IsMember({"oracle", "fermat"}));
  add_seed(two_squares);
  add_oracle(two_squares);
  two_squares->callback([&] {
    action = [&] {
      const Natural n = Natural::parse(ts_n), floor = Natural::parse(ts_floor);
      rec.inputs = Json{{"n", n},          {"mode", ts_mode},     {"trials", ts_trials},
                        {"floor", floor},  {"method", ts_method}, {"oracle", common.oracle}};
      if (ts_method == "fermat") {
        if (n < 1) fail(Errc::invalid_input, "N must be positive");
        rec.result = two_squares_fermat(factorize(n), true);
        return;
      }
      auto oracle = make_oracle(common.oracle);
      const auto mode = ts_mode == "probabilistic" ? TwoSquaresMode::probabilistic : TwoSquaresMode::deterministic;
      const TwoSquaresVerdict v = two_squares_oracle(n, *oracle, mode, ts_trials, floor, *rec.seed, true);
      rec.oracle_stats = v.oracle_stats;
      rec.result = v;
    };
  });

  // semiprime-bits
  std::string sb_n, sb_search = "deterministic";
  std::uint64_t sb_cap = kDefaultTrialCap;
  auto* bits = app.add_subcommand("semiprime-bits", "recover v2(p-1), v2(q-1) and low bits of p, q from N = pq");
  bits->add_option("--n", sb_n)->required();
  bits->add_option("--search", sb_search)->check(CLI::IsMember({"deterministic", "random"}));
  bits->add_option("--trial-cap", sb_cap);
  add_seed(bits);
  add_oracle(bits);
  bits->callback([&] {
    action = [&] {
      const Natural n = Natural::parse(sb_n);
      rec.inputs = Json{{"n", n}, {"search", sb_search}, {"trial_cap", sb_cap}, {"oracle", common.oracle}};
      auto oracle = make_oracle(common.oracle);
      const auto search =
          sb_search == "random" ? SearchStrategy::seeded_random : SearchStrategy::deterministic_enum;
      const ValuationResult r = semiprime_valuations(n, *oracle, search, sb_cap, *rec.seed);
      rec.oracle_stats = r.stats;
      rec.result = r;
    };
  });

  // qrp
  std::string qrp_n, qrp_a, qrp_method = "t4";
  auto* qrp = app.add_subcommand("qrp", "decide quadratic residuosity modulo N = pq");
  qrp->add_option("--n", qrp_n)->required();
  qrp->add_option("--a", qrp_a)->required();
  qrp->add_option("--method", qrp_method)->check(CLI::IsMember({"t4", "c2", "c3", "bruteforce"}));
  add_oracle(qrp);
  qrp->callback([&] {
    action = [&] {
      const Natural n = Natural::parse(qrp_n), a = Natural::parse(qrp_a);
      rec.inputs = Json{{"n", n}, {"a", a}, {"method", qrp_method}, {"oracle", common.oracle}};
      auto oracle = make_oracle(common.oracle);
      QrpVerdict v;
      if (qrp_method == "c2") {
        v = qrp_decide_c2(n, a, *oracle);
      } else if (qrp_method == "c3") {
        v = qrp_decide_permutation(n, a);
      } else if (qrp_method == "bruteforce") {
        v = qrp_bruteforce(n, a);
      } else {
        v = qrp_decide(n, a, *oracle);
      }
      rec.oracle_stats = v.oracle_stats;
      rec.result = v;
    };
  });

  // selftest
  std::optional<std::uint64_t> st_max_n;
  std::optional<unsigned> st_max_k;
  std::vector<std::string> st_suites;
  bool st_failed = false;
  auto* selftest_cmd = app.add_subcommand("selftest", "run property suites");
  selftest_cmd->add_option("--max-n", st_max_n);
  selftest_cmd->add_option("--max-k", st_max_k);
  selftest_cmd->add_option("--suites", st_suites, "comma-separated suite names (default: all)")->delimiter(',');
  selftest_cmd->callback([&] {
    action = [&] {
      if (st_suites.empty()) {
        for (const auto& [name, fn] : selftest::registry()) st_suites.emplace_back(name);
      }
      rec.inputs = Json{{"max_n", st_max_n ? Json(*st_max_n) : Json(nullptr)},
                        {"max_k", st_max_k ? Json(*st_max_k) : Json(nullptr)},
                        {"suites", st_suites}};
      const selftest::Bounds bounds{st_max_n, st_max_k};
      Json reports = Json::array();
      for (const auto& name : st_suites) {
        const selftest::Report r = selftest::run(name, bounds);
        if (!r.passed()) {
          st_failed = true;
          err << "suite " << r.name << " failed: " << r.first_failure.value_or("") << "\n";
        }
        reports.push_back(r);
      }
      rec.result = Json{{"passed", !st_failed}, {"suites", std::move(reports)}};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  for (const auto* sub : app.get_subcommands()) rec.command = sub->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    if (common.seed) {
      rec.seed = detail::parse_seed(*common.seed, "--seed");
    } else if (env_seed && !env_seed->empty()) {
      rec.seed = detail::parse_seed(*env_seed, "RESIDUO_SEED");
    } else {
      rec.seed = 1;
    }
    action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::precondition_violated ? kExitPrecondition : kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  rec.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  out << (record ? Json(rec) : rec.result).dump() << "\n";
  return st_failed ? kExitError : kExitOk;
}

}  // namespace residuo::cli

#include <gtest/gtest.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using residuo::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args, std::optional<std::string> env_seed = std::nullopt) {
  args.insert(args.begin(), "residuo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = residuo::cli::run(static_cast<int>(argv.size()), argv.data(), out, err, env_seed);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(CliSymbol, Examples) {
  auto r = run({"symbol", "--a", "4", "--n", "15", "--k", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{\"symbol\":-1}\n");
  EXPECT_EQ(run({"symbol", "--a", "1", "--n", "9", "--k", "3"}).json(), Json::parse(R"({"symbol": 1})"));
  EXPECT_EQ(run({"symbol", "--a", "4", "--n", "13", "--k", "2", "--method", "euler"}).json().at("symbol"), -1);
  EXPECT_EQ(run({"symbol", "--a", "4", "--n", "65", "--k", "2", "--method", "zolotarev"}).json().at("symbol"), 1);
  EXPECT_EQ(run({"symbol", "--a", "4", "--n", "65", "--k", "2", "--method", "definition"}).json().at("symbol"), 1);
}

TEST(CliSymbol, ExitCodes) {
  auto pre = run({"symbol", "--a", "2", "--n", "13", "--k", "2"});
  EXPECT_EQ(pre.code, 2);
  EXPECT_TRUE(pre.out.empty());
  EXPECT_NE(pre.err.find("PreconditionViolated"), std::string::npos);

  auto coprime = run({"symbol", "--a", "3", "--n", "15", "--k", "1"});
  EXPECT_EQ(coprime.code, 1);
  EXPECT_TRUE(coprime.out.empty());
  EXPECT_NE(coprime.err.find("NotCoprime"), std::string::npos);

  EXPECT_EQ(run({"symbol", "--a", "2", "--n", "15", "--k", "1", "--method", "euler"}).code, 1);
  EXPECT_EQ(run({"symbol", "--a", "x", "--n", "15", "--k", "1"}).code, 1);
  EXPECT_EQ(run({"symbol", "--n", "15", "--k", "1"}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliSubgroup, Examples) {
  auto members = [](const Outcome& o) { return o.json().at("members"); };
  EXPECT_EQ(members(run({"subgroup", "--n", "15", "--k", "1", "--units"})), Json::parse(R"(["1","4"])"));
  EXPECT_EQ(members(run({"subgroup", "--n", "13", "--k", "2", "--units"})), Json::parse(R"(["1","3","9"])"));
  EXPECT_EQ(members(run({"subgroup", "--n", "5", "--k", "0", "--units"})), Json::parse(R"(["1","2","3","4"])"));
  EXPECT_EQ(members(run({"subgroup", "--n", "5", "--k", "1"})), Json::parse(R"(["0","1","4"])"));
  auto big = run({"subgroup", "--n", "1000001", "--k", "1"});
  EXPECT_EQ(big.code, 1);
  EXPECT_NE(big.err.find("SearchSpaceTooLarge"), std::string::npos);
}

TEST(CliTwoSquares, Examples) {
  auto a = run({"two-squares", "--n", "65"}).json();
  EXPECT_EQ(a.at("solvable"), true);
  EXPECT_EQ(a.at("witness"), Json::parse(R"(["1","8"])"));

  auto b = run({"two-squares", "--n", "21"}).json();
  EXPECT_EQ(b.at("solvable"), false);
  EXPECT_EQ(b.at("certificate"), "3");

  auto c = run({"two-squares", "--n", "11021", "--floor", "50"}).json();
  EXPECT_EQ(c.at("solvable"), false);
  EXPECT_EQ(c.at("failing_base"), "2");

  auto f = run({"two-squares", "--n", "11021", "--method", "fermat"}).json();
  EXPECT_EQ(f.at("method"), "fermat_factorization");
  EXPECT_EQ(f.at("certificate"), "103");

  auto p = run({"two-squares", "--n", "11021", "--mode", "probabilistic", "--seed", "5"}).json();
  EXPECT_EQ(p.at("solvable"), false);
  EXPECT_EQ(p.at("seed"), 5);
}

TEST(CliSemiprimeBits, Examples) {
  auto a = run({"semiprime-bits", "--n", "39"}).json();
  EXPECT_EQ(a.at("v_small"), 1);
  EXPECT_EQ(a.at("v_large"), 2);
  EXPECT_EQ(a.at("p_bits"), "3");
  EXPECT_EQ(a.at("q_bits"), "5");
  EXPECT_EQ(a.at("m"), 3);

  auto b = run({"semiprime-bits", "--n", "65", "--oracle", "definition"}).json();
  EXPECT_EQ(b.at("v_small"), 2);
  EXPECT_EQ(b.at("v_large"), 2);
  EXPECT_EQ(b.at("p_bits"), "5");
  EXPECT_EQ(b.at("q_bits"), "5");

  auto c = run({"semiprime-bits", "--n", "15", "--oracle", "zolotarev"}).json();
  EXPECT_EQ(c.at("v_small"), 1);
  EXPECT_EQ(c.at("v_large"), 2);

  auto exhausted = run({"semiprime-bits", "--n", "9"});
  EXPECT_EQ(exhausted.code, 1);
  EXPECT_NE(exhausted.err.find("SearchExhausted"), std::string::npos);
}

TEST(CliQrp, Examples) {
  EXPECT_EQ(run({"qrp", "--n", "39", "--a", "2", "--method", "c2"}).json().at("is_residue"), false);
  EXPECT_EQ(run({"qrp", "--n", "39", "--a", "10", "--method", "c3"}).json().at("is_residue"), true);
  EXPECT_EQ(run({"qrp", "--n", "39", "--a", "1"}).json().at("is_residue"), true);
  EXPECT_EQ(run({"qrp", "--n", "39", "--a", "10", "--method", "bruteforce"}).json().at("is_residue"), true);
  EXPECT_EQ(run({"qrp", "--n", "39", "--a", "7"}).code, 1);
}

TEST(CliSelftest, Examples) {
  auto a = run({"selftest", "--max-n", "500", "--suites", "t3,t5"});
  EXPECT_EQ(a.code, 0) << a.err;
  const Json ja = a.json();
  EXPECT_EQ(ja.at("passed"), true);
  ASSERT_EQ(ja.at("suites").size(), 2u);
  for (const auto& s : ja.at("suites")) {
    EXPECT_GT(s.at("cases").get<std::uint64_t>(), 0u);
    EXPECT_EQ(s.at("failed"), 0);
  }

  auto b = run({"selftest", "--suites", "counterexample"}).json();
  EXPECT_EQ(b.at("suites")[0].at("detail"), Json::parse(R"({"n":"195","m":"79"})"));

  auto c = run({"selftest", "--max-n", "0"});
  EXPECT_EQ(c.code, 0) << c.err;
  for (const auto& s : c.json().at("suites")) EXPECT_EQ(s.at("cases"), 0) << s.at("name");

  EXPECT_EQ(run({"selftest", "--suites", "nope"}).code, 1);
}

TEST(CliRecord, SeedPrecedenceAndDeterminism) {
  const std::vector<std::string> args{"--record", "semiprime-bits", "--n", "123", "--search", "random"};
  auto from_env = run(args, "9").json();
  EXPECT_EQ(from_env.at("seed"), 9);
  EXPECT_EQ(from_env.at("command"), "semiprime-bits");
  EXPECT_EQ(from_env.at("result").at("seed"), 9);

  auto with_flag = args;
  with_flag.insert(with_flag.end(), {"--seed", "4"});
  EXPECT_EQ(run(with_flag, "9").json().at("seed"), 4);
  EXPECT_EQ(run(args).json().at("seed"), 1);

  // Same flags and seed give the same output (bare result mode).
  const std::vector<std::string> bare{"two-squares", "--n", "11021", "--mode", "probabilistic", "--seed", "3"};
  EXPECT_EQ(run(bare).out, run(bare).out);

  auto rec = run({"--record", "qrp", "--n", "39", "--a", "10"}).json();
  EXPECT_EQ(rec.at("oracle_stats").at("calls_total"), 1);
  EXPECT_EQ(rec.at("inputs").at("n"), "39");
  EXPECT_EQ(rec.get<residuo::cli::RunRecord>().command, "qrp");

  EXPECT_EQ(run(args, "not-a-number").code, 1);
}

#ifdef RESIDUO_CLI_BINARY
TEST(CliBinary, ExitCodesAndStreams) {
  auto shell = [](const std::string& env, const std::string& args) {
    const std::string cmd = env + " " + std::string(RESIDUO_CLI_BINARY) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[256];
    while (pipe && fgets(buf, sizeof buf, pipe)) out += buf;
    const int status = pipe ? pclose(pipe) : -1;
    return std::pair{WEXITSTATUS(status), out};
  };
  auto [ok, out] = shell("", "symbol --a 4 --n 15 --k 2");
  EXPECT_EQ(ok, 0);
  EXPECT_EQ(out, "{\"symbol\":-1}\n");
  EXPECT_EQ(shell("", "symbol --a 2 --n 13 --k 2"), (std::pair<int, std::string>{2, ""}));
  EXPECT_EQ(shell("", "symbol --a 3 --n 15 --k 2"), (std::pair<int, std::string>{1, ""}));

  auto [code, rec] = shell("RESIDUO_SEED=7", "--record two-squares --n 11021 --mode probabilistic");
  EXPECT_EQ(code, 0);
  EXPECT_EQ(Json::parse(rec).at("seed"), 7);
  EXPECT_EQ(shell("RESIDUO_SEED=x", "qrp --n 39 --a 1").first, 1);
}
#endif

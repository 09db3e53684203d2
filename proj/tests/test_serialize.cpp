#include <gtest/gtest.h>

#include <random>

#include "cli.hpp"
#include "residuo/serialize.hpp"

using namespace residuo;

TEST(Json, NaturalIsDecimalString) {
  const Natural big = Natural::parse("1208925819614629174706189");
  const Json j = big;
  EXPECT_TRUE(j.is_string());
  EXPECT_EQ(j.get<Natural>(), big);
}

TEST(Json, SignIsInteger) {
  EXPECT_EQ(Json(Sign::minus()).dump(), "-1");
  EXPECT_EQ(Json(1).get<Sign>(), Sign::plus());
}

TEST(Json, ResidueClassSetRoundTrips) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const std::uint64_t n = 1 + rng() % 500;
    const ResidueClassSet s = residue_set(n, rng() % 4, rng() % 2);
    const Json j = s;
    EXPECT_EQ(Json::parse(j.dump()).get<ResidueClassSet>(), s);
  }
  EXPECT_EQ(Json(residue_set(15, 1, true)).dump(), R"({"k":1,"members":["1","4"],"modulus":"15","units_only":true})");
}

TEST(Json, PermutationTableRoundTrips) {
  const PermutationTable t = multiplication_permutation(4, 65, residue_set(65, 1, false));
  const PermutationTable back = Json::parse(Json(t).dump()).get<PermutationTable>();
  EXPECT_EQ(back.domain, t.domain);
  EXPECT_EQ(back.image, t.image);
}

TEST(Json, OracleStatsRoundTrips) {
  auto oracle = make_factor_oracle();
  oracle->query(4, 15, 2);
  oracle->query(3, 65, 1);
  oracle->query(3, 65, 1);
  const OracleStats s = oracle->stats();
  const Json j = s;
  EXPECT_EQ(j.dump(), R"({"calls_by_k":{"1":2,"2":1},"calls_total":3,"max_k_seen":2})");
  EXPECT_EQ(Json::parse(j.dump()).get<OracleStats>(), s);
}

TEST(Json, VerdictShapes) {
  auto oracle = make_factor_oracle();
  const Json v = two_squares_oracle(21, *oracle, TwoSquaresMode::deterministic, 1, 50);
  EXPECT_EQ(v.at("certificate"), "3");
  EXPECT_EQ(v.at("solvable"), false);
  EXPECT_EQ(v.at("method"), "oracle_deterministic");
  EXPECT_TRUE(v.at("witness").is_null());

  const Json r = semiprime_valuations(39, *oracle);
  EXPECT_EQ(r.at("p_bits"), "3");
  EXPECT_EQ(r.at("v_large"), 2);
  EXPECT_EQ(r.at("search"), "deterministic_enum");

  const Json q = qrp_decide_c2(39, 10, *oracle);
  EXPECT_EQ(q.at("is_residue"), true);
  EXPECT_EQ(q.at("method"), "corollary_c2");

  const Json rel = valuation_relation(2, 3, 13);
  EXPECT_EQ(rel.at("v_N"), 1);
  EXPECT_EQ(rel.at("relation"), "strict_equal_case");
}

TEST(Json, RunRecordRoundTrips) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    cli::RunRecord r;
    r.command = t % 2 ? "qrp" : "two-squares";
    r.inputs = Json{{"n", std::to_string(rng() % 100000)}};
    r.result = Json{{"solvable", rng() % 2 == 0}, {"n", std::to_string(rng())}};
    if (t % 3) r.seed = rng();
    if (t % 5) {
      OracleStats s;
      s.calls_total = rng() % 1000;
      s.calls_by_k[1 + rng() % 5] = s.calls_total;
      s.max_k_seen = 7;
      r.oracle_stats = s;
    }
    r.elapsed_ms = static_cast<std::int64_t>(rng() % 10000);
    const Json j = r;
    EXPECT_EQ(Json::parse(j.dump()).get<cli::RunRecord>(), r);
  }
}

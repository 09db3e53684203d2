#pragma once

// JSON encodings. Every Natural crosses the boundary as a decimal string;
// small counters (k, valuations, call counts) stay JSON numbers.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "residuo/arithmetic.hpp"
#include "residuo/oracle.hpp"
#include "residuo/reductions.hpp"
#include "residuo/symbols.hpp"
#include "residuo/zolotarev.hpp"

namespace residuo {

using Json = nlohmann::json;

inline void to_json(Json& j, const Natural& n) { j = n.str(); }
inline void from_json(const Json& j, Natural& n) { n = Natural::parse(j.get<std::string>()); }


namespace detail {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline std::vector<std::string> decimal_strings(const std::vector<std::uint64_t>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (std::uint64_t v : values) out.push_back(std::to_string(v));
  return out;
}

inline std::vector<std::uint64_t> parse_residues(const Json& j) {
  std::vector<std::uint64_t> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(Natural::parse(e.get<std::string>()).to_u64());
  return out;
}

}  // namespace detail

inline void to_json(Json& j, const ResidueClassSet& s) {
  j = Json{{"modulus", s.modulus},
           {"k", s.k},
           {"units_only", s.units_only},
           {"members", detail::decimal_strings(s.members)}};
}
inline void from_json(const Json& j, ResidueClassSet& s) {
  s.modulus = j.at("modulus").get<Natural>();
  s.k = j.at("k").get<unsigned>();
  s.units_only = j.at("units_only").get<bool>();
  s.members = detail::parse_residues(j.at("members"));
}

inline void to_json(Json& j, const PermutationTable& p) {
  j = Json{{"domain", detail::decimal_strings(p.domain)}, {"image", detail::decimal_strings(p.image)}};
}
inline void from_json(const Json& j, PermutationTable& p) {
  p.domain = detail::parse_residues(j.at("domain"));
  p.image = detail::parse_residues(j.at("image"));
}

inline void to_json(Json& j, const OracleStats& s) {
  Json by_k = Json::object();
  for (const auto& [k, count] : s.calls_by_k) by_k[std::to_string(k)] = count;
  j = Json{{"calls_total", s.calls_total}, {"calls_by_k", std::move(by_k)}, {"max_k_seen", s.max_k_seen}};
}
inline void from_json(const Json& j, OracleStats& s) {
  s.calls_total = j.at("calls_total").get<std::uint64_t>();
  s.calls_by_k.clear();
  for (const auto& [k, count] : j.at("calls_by_k").items())
    s.calls_by_k[static_cast<unsigned>(std::stoul(k))] = count.get<std::uint64_t>();
  s.max_k_seen = j.at("max_k_seen").get<unsigned>();
}

inline void to_json(Json& j, const Factorization& f) {
  j = Json::array();
  for (const auto& pp : f.factors()) j.push_back(Json{{"prime", pp.prime}, {"exponent", pp.exponent}});
}

inline void to_json(Json& j, const TwoSquaresVerdict& v) {
  Json witness = nullptr;
  if (v.witness) witness = Json::array({v.witness->first, v.witness->second});
  j = Json{{"n", v.n},
           {"solvable", v.solvable},
           {"method", to_string(v.method)},
           {"certificate", detail::optional_json(v.certificate)},
           {"witness", std::move(witness)},
           {"failing_base", detail::optional_json(v.failing_base)},
           {"seed", detail::optional_json(v.seed)},
           {"oracle_stats", detail::optional_json(v.oracle_stats)}};
}

inline void to_json(Json& j, const ValuationResult& r) {
  j = Json{{"n", r.n},
           {"v_small", r.v_small},
           {"v_large", r.v_large},
           {"m", r.m},
           {"p_bits", r.p_bits},
           {"q_bits", r.q_bits},
           {"search", to_string(r.search)},
           {"seed", detail::optional_json(r.seed)},
           {"oracle_stats", r.stats}};
}

inline void to_json(Json& j, const QrpVerdict& v) {
  j = Json{{"n", v.n},
           {"a", v.a},
           {"is_residue", v.is_residue},
           {"method", to_string(v.method)},
           {"oracle_stats", detail::optional_json(v.oracle_stats)}};
}

inline void to_json(Json& j, const ValuationRecord& r) {
  j = Json{{"v_p", r.v_p}, {"v_q", r.v_q}, {"v_N", r.v_n}, {"relation", to_string(r.relation)}};
}

}  // namespace residuo

// Sign has no default state, so it needs a value-returning deserializer.
template <>
struct nlohmann::adl_serializer<residuo::Sign> {
  static residuo::Sign from_json(const residuo::Json& j) { return residuo::Sign::from_int(j.get<int>()); }
  static void to_json(residuo::Json& j, residuo::Sign s) { j = s.value(); }
};

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace residuo {

enum class Errc {
  invalid_modulus,
  undefined_valuation,
  factorization_timeout,
  not_invertible,
  not_coprime,
  search_space_too_large,
  precondition_violated,
  not_a_permutation,
  not_closed_under_action,
  not_admissible_modulus,
  invalid_input,
  search_exhausted,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_modulus: return "InvalidModulus";
    case Errc::undefined_valuation: return "UndefinedValuation";
    case Errc::factorization_timeout: return "FactorizationTimeout";
    case Errc::not_invertible: return "NotInvertible";
    case Errc::not_coprime: return "NotCoprime";
    case Errc::search_space_too_large: return "SearchSpaceTooLarge";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::not_a_permutation: return "NotAPermutation";
    case Errc::not_closed_under_action: return "NotClosedUnderAction";
    case Errc::not_admissible_modulus: return "NotAdmissibleModulus";
    case Errc::invalid_input: return "InvalidInput";
    case Errc::search_exhausted: return "SearchExhausted";
  }
  return "Unknown";
}

/// Every failure raised by the library. The code is the stable part; the
/// message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace residuo

#pragma once

#include <stdexcept>
#include <string>

namespace normring {

enum class errc {
  rank_deficient,
  dimension_mismatch,
  not_prime,
  not_monic,
  reducible,
  cannot_certify,
  division_by_zero,
  not_unital,
  not_closed,
  zero_ideal,
  order_mismatch,
  not_integral,
  not_contained,
  not_normalization,
  factorization_incomplete,
  dim_too_small,
  non_commutative,
  precondition_violated,
  parse_error,
  validation_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::rank_deficient: return "RankDeficient";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::not_prime: return "NotPrime";
    case errc::not_monic: return "NotMonic";
    case errc::reducible: return "Reducible";
    case errc::cannot_certify: return "CannotCertify";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::not_unital: return "NotUnital";
    case errc::not_closed: return "NotClosed";
    case errc::zero_ideal: return "ZeroIdeal";
    case errc::order_mismatch: return "OrderMismatch";
    case errc::not_integral: return "NotIntegral";
    case errc::not_contained: return "NotContained";
    case errc::not_normalization: return "NotNormalization";
    case errc::factorization_incomplete: return "FactorizationIncomplete";
    case errc::dim_too_small: return "DimTooSmall";
    case errc::non_commutative: return "NonCommutative";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace normring

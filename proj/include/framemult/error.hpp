#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace framemult {

enum class ErrorCode {
  dim_too_large,
  no_convergence,
  not_contraction,
  not_a_frame,
  not_riesz,
  dim_mismatch,
  count_mismatch,
  empty_after_prune,
  unbounded_symbol,
  symbol_not_signed,
  lambda_too_large,
  perturbation_too_large,
  symbol_ratio_too_large,
  mu_too_large,
  not_riesz_weighted,
  not_equivalent,
  not_dual,
  unknown_fixture,
  param_out_of_range,
  schema,
  invalid_argument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// A sufficient condition of an inversion rule did not hold. Carries the
// constants that were evaluated so callers can report the nearest miss.
class RuleRefused : public Error {
 public:
  RuleRefused(ErrorCode code, const std::string& what,
              std::map<std::string, double> constants)
      : Error(code, what), constants_(std::move(constants)) {}

  const std::map<std::string, double>& constants() const noexcept {
    return constants_;
  }

 private:
  std::map<std::string, double> constants_;
};

// Input document does not match the JSON schema. `pointer` is an RFC 6901
// JSON pointer to the offending value.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& message)
      : Error(ErrorCode::schema, pointer + ": " + message),
        pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace framemult

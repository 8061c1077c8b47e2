#pragma once

#include <stdexcept>
#include <string>

namespace symrigid {

enum class ErrorCode {
  invalid_argument,
  mixed_groups,
  unsupported_enumeration,
  size_cap,
  not_tight,
  decomposition_impossible,
  invalid_step,
  no_valid_gains,
  rank_deficient,
  schema,
  validation,
  resource_cap,
  internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symrigid

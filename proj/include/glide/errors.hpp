#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace glide {

enum class ErrorCode {
  validation,
  unsupported_configuration,
  infeasible,
  wind_exceeds_airspeed,
  io,
};

std::string_view to_string(ErrorCode code);

/// Base error for everything the library reports. `field()` names the
/// offending scenario field when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string field = {})
      : std::runtime_error(std::move(message)), code_(code), field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

inline Error validation_error(std::string field, const std::string& message) {
  return Error(ErrorCode::validation, field + ": " + message, field);
}

}  // namespace glide

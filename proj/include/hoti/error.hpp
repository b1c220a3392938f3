#pragma once

#include <stdexcept>
#include <string>

namespace hoti {

enum class ErrorCode {
  invalid_argument = 1,
  bounds = 2,
  commensurability = 3,
  assembly = 4,
  incomplete_plaquette = 5,
  size = 6,
  domain = 7,
  undefined_ratio = 8,
  hardware_range = 9,
  parse = 10,
  io = 11,
  numeric = 12,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace hoti

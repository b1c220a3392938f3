#include "hoti/error.hpp"

#include "hoti/parallel.hpp"

namespace hoti {

const char* error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::invalid_argument: return "invalid_argument";
  case ErrorCode::bounds: return "bounds";
  case ErrorCode::commensurability: return "commensurability";
  case ErrorCode::assembly: return "assembly";
  case ErrorCode::incomplete_plaquette: return "incomplete_plaquette";
  case ErrorCode::size: return "size";
  case ErrorCode::domain: return "domain";
  case ErrorCode::undefined_ratio: return "undefined_ratio";
  case ErrorCode::hardware_range: return "hardware_range";
  case ErrorCode::parse: return "parse";
  case ErrorCode::io: return "io";
  case ErrorCode::numeric: return "numeric";
  }
  return "unknown";
}

int default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(std::min(n, 8u));
}

} // namespace hoti

#include "torus_xray/error.hpp"

#include <sstream>

namespace torus_xray {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::invalid_direction: return "invalid_direction";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::aliasing: return "aliasing";
    case ErrorCode::incomplete_data: return "incomplete_data";
    case ErrorCode::not_in_kernel: return "not_in_kernel";
    case ErrorCode::not_solenoidal: return "not_solenoidal";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message,
             std::vector<std::int64_t> frequency)
    : std::runtime_error(message + " at k=" + format_vector(frequency)),
      code_(code),
      frequency_(std::move(frequency)) {}

Error::Error(ErrorCode code, const std::string& message, double residual)
    : std::runtime_error(message + " (residual " + std::to_string(residual) + ")"),
      code_(code),
      residual_(residual) {}

std::string format_vector(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

}  // namespace torus_xray

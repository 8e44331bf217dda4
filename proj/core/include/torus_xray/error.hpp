#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace torus_xray {

enum class ErrorCode {
  invalid_argument,
  invalid_direction,
  dimension_mismatch,
  aliasing,
  incomplete_data,
  not_in_kernel,
  not_solenoidal,
  parse_error,
  io_error,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library. Errors that concern one Fourier mode
// carry that frequency; division failures carry the residual magnitude.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message,
        std::vector<std::int64_t> frequency);
  Error(ErrorCode code, const std::string& message, double residual);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::vector<std::int64_t>>& frequency() const noexcept {
    return frequency_;
  }
  std::optional<double> residual() const noexcept { return residual_; }

 private:
  ErrorCode code_;
  std::optional<std::vector<std::int64_t>> frequency_;
  std::optional<double> residual_;
};

std::string format_vector(const std::vector<std::int64_t>& v);

}  // namespace torus_xray

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace octa {

enum class ErrorCode {
  not_prime,
  reducible_modulus,
  division_by_zero,
  spec_mismatch,
  no_such_root,
  unsupported_field,
  singular_matrix,
  not_smooth,
  not_split,
  configuration_mismatch,
  not_an_automorphism,
  not_general_position,
  not_a_sixer,
  identity_failure,
  not_a_determinantal_rep,
  cube_root_unavailable,
  no_solution_in_field,
  constraint_violation,
  degenerate_parameters,
  parse_error,
};

std::string_view to_string(ErrorCode code);

/// Exception type for every recoverable failure in the library. The code
/// names the failure class; the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace octa

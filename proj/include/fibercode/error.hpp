#pragma once

#include <stdexcept>
#include <string>

namespace fibercode {

enum class Errc {
  invalid_argument,
  dimension_mismatch,
  group_mismatch,
  group_too_large,
  group_identity,
  group_missing_inverse,
  group_not_latin,
  group_not_associative,
  parse_error,
  unknown_group_kind,
  unknown_token,
  ragged_matrix,
  twist_mode_conflict,
  missing_assignment,
  io_error,
  not_flat,
  css_violation,
  empty_pool,
};

// Validation errors reject the input; everything else is a construction failure.
constexpr bool is_validation_error(Errc code) {
  switch (code) {
    case Errc::not_flat:
    case Errc::css_violation:
    case Errc::empty_pool:
      return false;
    default:
      return true;
  }
}

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fibercode

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qrsteg {

enum class Errc {
  invalid_modulus,
  key_parameter,
  message_range,
  invalid_ciphertext,
  invalid_value,
  corrupt_bundle,
  shape,
  format,
  unsupported_format,
  io,
  capacity,
  corrupt_permutation,
  invalid_input,
  usage,
};

std::string_view errc_name(Errc code) noexcept;

/// Process exit status for an error category: 2 usage, 3 format, 4 crypto,
/// 5 capacity.
int exit_code_for(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qrsteg

#include "qrsteg/error.hpp"

namespace qrsteg {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_modulus: return "invalid-modulus";
    case Errc::key_parameter: return "key-parameter";
    case Errc::message_range: return "message-range";
    case Errc::invalid_ciphertext: return "invalid-ciphertext";
    case Errc::invalid_value: return "invalid-value";
    case Errc::corrupt_bundle: return "corrupt-bundle";
    case Errc::shape: return "shape";
    case Errc::format: return "format";
    case Errc::unsupported_format: return "unsupported-format";
    case Errc::io: return "io";
    case Errc::capacity: return "capacity";
    case Errc::corrupt_permutation: return "corrupt-permutation";
    case Errc::invalid_input: return "invalid-input";
    case Errc::usage: return "usage";
  }
  return "unknown";
}

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::usage:
    case Errc::invalid_input:
      return 2;
    case Errc::format:
    case Errc::unsupported_format:
    case Errc::io:
    case Errc::shape:
    case Errc::corrupt_permutation:
      return 3;
    case Errc::invalid_modulus:
    case Errc::key_parameter:
    case Errc::message_range:
    case Errc::invalid_ciphertext:
    case Errc::invalid_value:
    case Errc::corrupt_bundle:
      return 4;
    case Errc::capacity:
      return 5;
  }
  return 1;
}

}  // namespace qrsteg

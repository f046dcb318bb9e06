#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lowenergy {

enum class Errc {
  CtxMismatch,
  DivisionByZero,
  EmptyDenominator,
  InvalidField,
  InvalidParams,
  InvalidInputs,
  TooSmall,
  TooLarge,
  Unsupported,
  Degenerate,
  InsufficientNondegeneracy,
  SizeImbalance,
  NotForwardInvariant,
  UnknownCheckName,
  Parse,
  Internal,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
/// `Internal` means a post-condition the library itself asserts did not hold.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lowenergy

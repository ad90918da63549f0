#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace syndsl {

// Every contract violation in the library is reported through DslError.
// The code identifies the violated contract; the message carries the
// shapes/widths involved and a construction-site breadcrumb.
enum class Err {
  WidthZero,
  ValueOverflow,
  WidthMismatch,
  SliceBounds,
  SelWidth,
  ArityError,
  ShapeError,
  NotHomogeneous,
  LinearityViolation,
  UnderusedResource,
  DanglingRegister,
  AssertUnitInput,
  TraceShapeError,
  UnknownDesign,
  UnsupportedWidth,
};

std::string_view err_name(Err e);

class DslError : public std::runtime_error {
 public:
  DslError(Err code, const std::string& message)
      : std::runtime_error(std::string(err_name(code)) + ": " + message),
        code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void raise(Err code, const std::string& message) {
  throw DslError(code, message);
}

}  // namespace syndsl

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace valent {

/// Base class of every error raised by the library. The CLI maps these to
/// exit status 3 and reports the originating operation.
class Error : public std::runtime_error {
 public:
  Error(std::string operation, const std::string& what)
      : std::runtime_error(operation + ": " + what), operation_(std::move(operation)) {}

  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string operation_;
};

#define VALENT_DECLARE_ERROR(Name)                                 \
  class Name : public Error {                                      \
   public:                                                         \
    Name(std::string operation, const std::string& what)           \
        : Error(std::move(operation), what) {}                      \
  }

VALENT_DECLARE_ERROR(DivisionByZero);
VALENT_DECLARE_ERROR(DimensionMismatch);
VALENT_DECLARE_ERROR(NonSquare);
VALENT_DECLARE_ERROR(NotASubmodule);
VALENT_DECLARE_ERROR(SingularMap);
VALENT_DECLARE_ERROR(NotInert);
VALENT_DECLARE_ERROR(PreconditionFailed);
VALENT_DECLARE_ERROR(ZeroVector);
VALENT_DECLARE_ERROR(NotBlockTriangular);
VALENT_DECLARE_ERROR(IncompatibleAction);
VALENT_DECLARE_ERROR(InvalidArgument);
VALENT_DECLARE_ERROR(Overflow);

#undef VALENT_DECLARE_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error("parse_element", what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace valent

#pragma once

#include <stdexcept>
#include <string>

namespace glob {

/// Base class for every error raised by the kernel.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GLOB_DEFINE_ERROR(Name)              \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

GLOB_DEFINE_ERROR(DimensionError);
GLOB_DEFINE_ERROR(TableError);
GLOB_DEFINE_ERROR(MonomorphismError);
GLOB_DEFINE_ERROR(TypeError);
GLOB_DEFINE_ERROR(AdmissibilityError);
GLOB_DEFINE_ERROR(NormalizationError);
GLOB_DEFINE_ERROR(PreconditionError);
GLOB_DEFINE_ERROR(SoundnessError);
GLOB_DEFINE_ERROR(ConsistencyError);
GLOB_DEFINE_ERROR(CompletenessError);
GLOB_DEFINE_ERROR(ResourceError);
GLOB_DEFINE_ERROR(SearchFailure);
GLOB_DEFINE_ERROR(ValidationError);

#undef GLOB_DEFINE_ERROR

/// Syntax or reference error in the interchange format, with a 1-based location.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column = 1)
      : Error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class ReferenceError : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace glob

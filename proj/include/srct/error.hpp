#pragma once

#include <stdexcept>
#include <string>

namespace srct {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPrime : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct BadIndex : Error { using Error::Error; };
struct InvalidEll : Error { using Error::Error; };
struct SecrecyUnachievable : Error { using Error::Error; };
struct InsufficientNodes : Error { using Error::Error; };
struct PreconditionUnmet : Error { using Error::Error; };
struct MalformedDocument : Error { using Error::Error; };
struct UnsupportedVersion : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

}  // namespace srct

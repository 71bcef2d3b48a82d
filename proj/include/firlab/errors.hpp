#pragma once

#include <stdexcept>
#include <string>

namespace firlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), position(pos) {}
};

struct UnknownLetter : Error { using Error::Error; };
struct UnknownName : Error { using Error::Error; };
struct NoImages : Error { using Error::Error; };
struct InvalidPresentation : Error { using Error::Error; };
struct NotARelation : Error { using Error::Error; };
struct NotHomogeneous : Error { using Error::Error; };
struct AmbientMismatch : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };

}  // namespace firlab

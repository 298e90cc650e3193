#pragma once

#include <stdexcept>
#include <string>

namespace monodyn {

// Every failure raised by the library derives from Error so the CLI can map
// it onto an exit code without inspecting message text.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class SingularBasis : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class DegeneratePolytope : public Error {
 public:
  using Error::Error;
};

class DegenerateLift : public Error {
 public:
  using Error::Error;
};

class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  InsufficientData(const std::string& what, std::size_t needed)
      : Error(what), needed_(needed) {}

  /// Minimal number of terms that would have been accepted.
  std::size_t needed() const noexcept { return needed_; }

 private:
  std::size_t needed_;
};

}  // namespace monodyn

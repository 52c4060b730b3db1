#pragma once

#include <stdexcept>
#include <string>

namespace longrun {

// Every error raised by the library derives from Error, so callers (the CLI in
// particular) can separate numeric/domain failures from everything else.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_argument"; }
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

class ResourceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "resource_error"; }
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "convergence_error"; }
};

}  // namespace longrun

#pragma once

#include <stdexcept>
#include <string>

namespace econet {

/// Base class for all library failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input did not satisfy a documented contract (bad file, bad argument,
/// malformed record). The CLI maps this to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace econet

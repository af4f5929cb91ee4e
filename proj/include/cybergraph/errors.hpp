#pragma once

#include <stdexcept>
#include <string>

namespace cybergraph {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments, unparsable input, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An algorithm ran out of attempts, restarts or switch budget, or a fit
/// could not make progress.
class AlgorithmError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace cybergraph

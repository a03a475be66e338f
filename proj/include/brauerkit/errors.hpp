#pragma once

#include <stdexcept>

namespace bk {

// Malformed or inconsistent input (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size cap was exceeded (CLI exit code 3).
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation's precondition does not hold (CLI exit code 4).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bk

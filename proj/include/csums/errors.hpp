// errors.hpp
//
// Exception types shared by all modules. GuardError covers every size,
// memory, or overflow limit; PreconditionError covers inputs that violate
// an operation's contract (wrong kind of sequence, bad parameter range).

#pragma once

#include <stdexcept>
#include <string>

namespace csums {

class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace csums

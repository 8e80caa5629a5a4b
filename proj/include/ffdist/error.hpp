#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffdist {

/// Bad parameters or violated preconditions. The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the configured point cap.
class CapExceeded : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// An identity that must hold exactly did not. The CLI maps this to exit code 1.
class IdentityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

bool is_prime(std::uint64_t n);

}  // namespace ffdist

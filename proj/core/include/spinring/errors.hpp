#pragma once

#include <stdexcept>
#include <string>

namespace spinring {

/// Invalid input: out-of-range parameters, mismatched dimensions, bad config.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to converge or lost unitarity.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An output location could not be created or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinring

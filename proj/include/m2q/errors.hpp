#pragma once

#include <stdexcept>
#include <string>

namespace m2q {

/// Input is well-formed but carries no information (e.g. an all-zero matrix
/// passed to an operation that needs a nonzero scale).
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size or work budget would be exceeded.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed matrix or spec file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace m2q

#pragma once

#include <stdexcept>
#include <string>

namespace corrdyn {

/// Malformed text input: configuration documents, Pauli-string labels.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical precondition failed at run time (pole proximity, unstable
/// step, divergent series).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense work requested beyond the supported number of sites.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace corrdyn

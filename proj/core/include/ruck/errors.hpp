#pragma once

#include <stdexcept>
#include <string>

namespace ruck {

/// Malformed input text: bad CSV headers, field counts, number syntax.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally valid input that violates a domain rule.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown team or column name.
class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric domain violations (non-finite inputs, non-positive rates).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failures inside the optimizer or the sampler (step-size underflow,
/// non-finite objective).
class SamplerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ruck

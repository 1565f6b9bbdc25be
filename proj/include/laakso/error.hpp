#pragma once

#include <stdexcept>
#include <string>

namespace laakso {

// Bad input: invalid sequences, configurations, arguments outside a
// function's domain. The CLI maps these to exit status 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// An explicit j-sequence was indexed past its last entry.
class SequenceTooShort : public ValidationError {
 public:
  explicit SequenceTooShort(const std::string& what) : ValidationError(what) {}
};

// Evaluation at a pole of a meromorphic expression.
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// The eigensolver did not reach its residual contract. Exit status 3.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace laakso

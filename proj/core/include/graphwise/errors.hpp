#pragma once

#include <exception>
#include <string>

namespace graphwise {

// Base class for all library errors. Carries its own message buffer so that
// pipeline stages can prepend a stage label before rethrowing.
class Error : public std::exception {
 public:
  explicit Error(std::string message) : message_(std::move(message)) {}
  const char* what() const noexcept override { return message_.c_str(); }
  void prepend(const std::string& prefix) { message_ = prefix + message_; }

 private:
  std::string message_;
};

// Invalid arguments, out-of-range parameters, malformed configs or files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Solver non-convergence, indefinite matrices, integer overflow.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Bias correction denominator fell below the reliability guard of 0.5.
class DebiasError : public NumericalError {
 public:
  DebiasError(int j, int k, double denominator);
  int j() const noexcept { return j_; }
  int k() const noexcept { return k_; }
  double denominator() const noexcept { return denominator_; }

 private:
  int j_;
  int k_;
  double denominator_;
};

}  // namespace graphwise

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace torus {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedDivisor : public Error {
 public:
  using Error::Error;
};

/// Root isolation could not separate signs from rounding noise.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

/// Division by a zero divisor of Q(sqrt m); only possible when m is a perfect square.
class ZeroDivisor : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
      : Error(what), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class DegreeViolation : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class NoKnownIntegral : public Error {
 public:
  using Error::Error;
};

class ChartError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Integration state left any reasonable neighbourhood of the torus.
class StepOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace torus

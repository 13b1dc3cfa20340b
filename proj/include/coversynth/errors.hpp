#pragma once

#include <stdexcept>
#include <string>

namespace coversynth {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown vertex, symbol or scenario name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// A plan label that does not name a reading of the sensor map in use.
class MappingError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant broken (heterogeneous belief, empty sensor image, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Constraint specification that cannot be evaluated as requested.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Malformed input structure handed to an operation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Cover that is not admitted by a solution set.
class NotASolutionError : public Error {
 public:
  using Error::Error;
};

/// A configured budget was exceeded. `cap()` names the budget.
class ResourceError : public Error {
 public:
  ResourceError(std::string cap, const std::string& detail)
      : Error("budget '" + cap + "' exceeded: " + detail), cap_(std::move(cap)) {}

  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string cap_;
};

}  // namespace coversynth

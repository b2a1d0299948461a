#pragma once

#include <stdexcept>
#include <string>

namespace signalcast {

/// Bad input: malformed files, violated preconditions, missing artifacts.
/// The CLI maps this family to exit status 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Estimation or linear-algebra failure. The CLI maps this family to exit status 2.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericError {
 public:
  SingularMatrixError(const std::string& what, double condition)
      : NumericError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace signalcast

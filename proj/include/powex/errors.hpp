#pragma once

#include <stdexcept>
#include <string>

namespace powex {

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The point x has c*x + d <= 0, so (c*x + d)^(1/t) is undefined.
class OutOfSupport : public DomainError {
 public:
  OutOfSupport(double x, double x_min);

  double x() const noexcept { return x_; }
  double x_min() const noexcept { return x_min_; }

 private:
  double x_;
  double x_min_;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws DomainError naming `what` when v is NaN or infinite.
void require_finite(double v, const char* what);

}  // namespace powex
